//! Complementarity between the dense-coding advantage and multiparty
//! correlations: per-state records, the two bounds, the MDCC boundary curves
//! and batch verification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::densecoding::advantage;
use crate::error::{Error, Result};
use crate::linalg::{binary_entropy, von_neumann_entropy};
use crate::measures::{self, MeasuredParty};
use crate::party::Party;
use crate::states::{mdcc, PureState3Q, SamplerClass};

/// Tolerance for the GGM bound, which is exact for pure states.
pub const GGM_BOUND_TOL: f64 = 1e-9;
/// Tolerance for the tangle bound and the discord envelope.
pub const EMPIRICAL_BOUND_TOL: f64 = 1e-6;
const TANGLE_RANGE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Haar,
    GhzClass,
    WClass,
    Mdcc,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Haar => "haar",
            ClassTag::GhzClass => "ghz_class",
            ClassTag::WClass => "w_class",
            ClassTag::Mdcc => "mdcc",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            ClassTag::Haar,
            ClassTag::GhzClass,
            ClassTag::WClass,
            ClassTag::Mdcc,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
        .ok_or_else(|| format!("unknown class `{s}`"))
    }
}

impl From<SamplerClass> for ClassTag {
    fn from(c: SamplerClass) -> Self {
        match c {
            SamplerClass::Haar => ClassTag::Haar,
            SamplerClass::GhzClass => ClassTag::GhzClass,
            SamplerClass::WClass => ClassTag::WClass,
        }
    }
}

/// Every plotted quantity for one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureRecord {
    pub state_id: u64,
    #[serde(rename = "class")]
    pub class_tag: ClassTag,
    pub alpha: Option<f64>,
    pub s_a: f64,
    pub s_b: f64,
    pub s_c: f64,
    pub ggm: f64,
    pub tangle: f64,
    pub discord_score: Option<f64>,
    pub c_adv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecordOptions {
    /// Sender for the dense-coding advantage and hub of the discord score.
    pub sender: Party,
    pub with_discord: bool,
    pub measured: MeasuredParty,
}

impl Default for RecordOptions {
    fn default() -> Self {
        Self {
            sender: Party::A,
            with_discord: false,
            measured: MeasuredParty::Second,
        }
    }
}

/// Record plus optimizer bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Measured {
    pub record: MeasureRecord,
    /// False when a discord refinement hit its evaluation budget.
    pub discord_converged: bool,
}

pub fn measure_state(
    state: &PureState3Q,
    state_id: u64,
    class_tag: ClassTag,
    alpha: Option<f64>,
    opts: &RecordOptions,
) -> Result<Measured> {
    let [s_a, s_b, s_c] =
        Party::ALL.map(|p| state.reduced(p).and_then(|r| von_neumann_entropy(&r)));
    let (discord_score, discord_converged) = if opts.with_discord {
        let d = measures::discord_monogamy_score(state, opts.sender, opts.measured)?;
        (Some(d.value), d.converged())
    } else {
        (None, true)
    };
    let record = MeasureRecord {
        state_id,
        class_tag,
        alpha,
        s_a: s_a?,
        s_b: s_b?,
        s_c: s_c?,
        ggm: measures::ggm(state)?,
        tangle: measures::tangle(state, Party::A)?,
        discord_score,
        c_adv: advantage(state, opts.sender)?.value,
    };
    Ok(Measured {
        record,
        discord_converged,
    })
}

/// `C_adv + H(δ_G) − 1`; nonpositive for every pure state.
pub fn ggm_bound_slack(record: &MeasureRecord) -> Result<f64> {
    Ok(record.c_adv + binary_entropy(record.ggm)? - 1.0)
}

/// `C_adv + H(1/2 − √(1 − δ_τ)/2) − 1`.
pub fn tangle_bound_slack(record: &MeasureRecord) -> Result<f64> {
    let t = record.tangle;
    if !(-TANGLE_RANGE_TOL..=1.0 + TANGLE_RANGE_TOL).contains(&t) || t.is_nan() {
        return Err(Error::OutOfRange {
            name: "tangle",
            value: t,
        });
    }
    let t = t.clamp(0.0, 1.0);
    let p = 0.5 - 0.5 * (1.0 - t).sqrt();
    Ok(record.c_adv + binary_entropy(p)? - 1.0)
}

/// GGM of the MDCC state, `(1 − α)² / (2(1 + α²))`.
pub fn mdcc_ggm(alpha: f64) -> f64 {
    (1.0 - alpha) * (1.0 - alpha) / (2.0 * (1.0 + alpha * alpha))
}

/// The `α ∈ [0, 1]` whose MDCC state has GGM `g`, by bisection.
pub fn alpha_from_ggm(g: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&g) {
        return Err(Error::OutOfRange {
            name: "ggm",
            value: g,
        });
    }
    if g == 0.5 {
        return Ok(0.0);
    }
    if g == 0.0 {
        return Ok(1.0);
    }
    // mdcc_ggm decreases strictly on [0, 1]
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mdcc_ggm(mid) > g {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = if (mdcc_ggm(lo) - g).abs() <= (mdcc_ggm(hi) - g).abs() {
        lo
    } else {
        hi
    };
    Ok(a)
}

/// `C_adv(ψ_α) − C_adv(ψ)` for the MDCC state with the same GGM, sender A.
pub fn theorem_check(state: &PureState3Q) -> Result<f64> {
    let alpha = alpha_from_ggm(measures::ggm(state)?)?;
    let family = advantage(&mdcc(alpha)?, Party::A)?.value;
    Ok(family - advantage(state, Party::A)?.value)
}

/// `n` evenly spaced values over `[lo, hi]`, endpoints included.
pub fn alpha_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeMeasure {
    Ggm,
    Tangle,
    DiscordScore,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MdccPoint {
    pub alpha: f64,
    pub record: MeasureRecord,
}

/// MDCC boundary curve: `(C_adv, measure)` traced over α.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub measure: EnvelopeMeasure,
    pub points: Vec<MdccPoint>,
}

pub fn mdcc_record(alpha: f64, state_id: u64, opts: &RecordOptions) -> Result<MeasureRecord> {
    Ok(measure_state(&mdcc(alpha)?, state_id, ClassTag::Mdcc, Some(alpha), opts)?.record)
}

/// MDCC records over `alphas`; discord is computed only for the discord curve.
pub fn mdcc_envelope(
    measure: EnvelopeMeasure,
    alphas: &[f64],
    opts: &RecordOptions,
) -> Result<Envelope> {
    let opts = RecordOptions {
        with_discord: measure == EnvelopeMeasure::DiscordScore,
        ..*opts
    };
    let points = alphas
        .iter()
        .enumerate()
        .map(|(i, &alpha)| {
            Ok(MdccPoint {
                alpha,
                record: mdcc_record(alpha, i as u64, &opts)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Envelope { measure, points })
}

impl Envelope {
    fn ordinate(&self, r: &MeasureRecord) -> f64 {
        match self.measure {
            EnvelopeMeasure::Ggm => r.ggm,
            EnvelopeMeasure::Tangle => r.tangle,
            EnvelopeMeasure::DiscordScore => r.discord_score.unwrap_or(f64::NAN),
        }
    }

    /// `(C_adv, measure)` pairs sorted by `C_adv`.
    pub fn curve(&self) -> Vec<(f64, f64)> {
        let mut c: Vec<(f64, f64)> = self
            .points
            .iter()
            .map(|p| (p.record.c_adv, self.ordinate(&p.record)))
            .collect();
        c.sort_by(|a, b| a.0.total_cmp(&b.0));
        c
    }

    /// Linear interpolation of the curve at abscissa `c_adv`, clamped to its ends.
    pub fn value_at(&self, c_adv: f64) -> Option<f64> {
        interpolate(&self.curve(), c_adv)
    }
}

fn interpolate(curve: &[(f64, f64)], x: f64) -> Option<f64> {
    let first = curve.first()?;
    let last = curve.last()?;
    if x <= first.0 {
        return Some(first.1);
    }
    if x >= last.0 {
        return Some(last.1);
    }
    let k = curve.partition_point(|p| p.0 <= x);
    let (x0, y0) = curve[k - 1];
    let (x1, y1) = curve[k];
    if x1 == x0 {
        return Some(y0.max(y1));
    }
    Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Ggm,
    Tangle,
}

impl BoundKind {
    pub fn slack(self, record: &MeasureRecord) -> Result<f64> {
        match self {
            BoundKind::Ggm => ggm_bound_slack(record),
            BoundKind::Tangle => tangle_bound_slack(record),
        }
    }
}

impl FromStr for BoundKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ggm" => Ok(BoundKind::Ggm),
            "tangle" => Ok(BoundKind::Tangle),
            other => Err(format!("unknown bound `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_name: BoundKind,
    pub tolerance: f64,
    pub records: usize,
    /// Largest `left side − 1` over records whose slack could be evaluated.
    pub max_slack: f64,
    /// Records with slack above tolerance, plus records the bound cannot be evaluated on.
    pub violations: usize,
    pub invalid: usize,
    pub worst_state_id: Option<u64>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub fn check_bound(records: &[MeasureRecord], bound: BoundKind, tolerance: f64) -> BoundReport {
    let mut report = BoundReport {
        bound_name: bound,
        tolerance,
        records: records.len(),
        max_slack: f64::NEG_INFINITY,
        violations: 0,
        invalid: 0,
        worst_state_id: None,
    };
    for r in records {
        match bound.slack(r) {
            Ok(s) => {
                if s > report.max_slack {
                    report.max_slack = s;
                    report.worst_state_id = Some(r.state_id);
                }
                if s > tolerance {
                    report.violations += 1;
                }
            }
            Err(_) => {
                report.invalid += 1;
                report.violations += 1;
            }
        }
    }
    report
}

/// One report per requested bound.
pub fn verify_batch(
    records: &[MeasureRecord],
    bounds: &[BoundKind],
    tolerance: f64,
) -> Vec<BoundReport> {
    bounds
        .iter()
        .map(|&b| check_bound(records, b, tolerance))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub checked: usize,
    /// Largest `δ_D − envelope(C_adv)`.
    pub max_excess: f64,
    pub violations: usize,
    pub worst_state_id: Option<u64>,
}

/// Compare `(C_adv, δ_D)` of records carrying a discord score against the
/// interpolated MDCC discord curve.
pub fn check_discord_envelope(
    records: &[MeasureRecord],
    envelope: &Envelope,
    tolerance: f64,
) -> EnvelopeReport {
    let curve = envelope.curve();
    let mut report = EnvelopeReport {
        checked: 0,
        max_excess: f64::NEG_INFINITY,
        violations: 0,
        worst_state_id: None,
    };
    for r in records {
        let Some(d) = r.discord_score else { continue };
        let Some(bound) = interpolate(&curve, r.c_adv) else {
            continue;
        };
        report.checked += 1;
        let excess = d - bound;
        if excess > report.max_excess {
            report.max_excess = excess;
            report.worst_state_id = Some(r.state_id);
        }
        if excess > tolerance {
            report.violations += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{named_state, NamedState};

    fn record(state: &PureState3Q) -> MeasureRecord {
        measure_state(state, 0, ClassTag::Haar, None, &RecordOptions::default())
            .unwrap()
            .record
    }

    #[test]
    fn slack_examples() {
        let ghz = record(&named_state(NamedState::Ghz));
        assert!(ggm_bound_slack(&ghz).unwrap().abs() < 1e-12);
        assert!(tangle_bound_slack(&ghz).unwrap().abs() < 1e-12);
        let b = record(&named_state(NamedState::BellAbTimes0));
        assert!(ggm_bound_slack(&b).unwrap().abs() < 1e-12);
        assert!(tangle_bound_slack(&b).unwrap().abs() < 1e-12);
        for alpha in alpha_grid(0.0, 1.0, 21) {
            let r = mdcc_record(alpha, 0, &RecordOptions::default()).unwrap();
            assert!(ggm_bound_slack(&r).unwrap().abs() <= 1e-10, "α={alpha}");
            assert!(tangle_bound_slack(&r).unwrap().abs() <= 1e-9, "α={alpha}");
        }
        let mut bad = ghz.clone();
        bad.tangle = 1.5;
        assert!(tangle_bound_slack(&bad).is_err());
    }

    #[test]
    fn alpha_inversion() {
        assert_eq!(alpha_from_ggm(0.5).unwrap(), 0.0);
        assert_eq!(alpha_from_ggm(0.0).unwrap(), 1.0);
        assert!((alpha_from_ggm(0.1).unwrap() - 0.5).abs() < 1e-9);
        for g in [1e-6, 0.01, 0.2, 0.3333, 0.4999] {
            let a = alpha_from_ggm(g).unwrap();
            assert!((mdcc_ggm(a) - g).abs() <= 1e-12);
        }
        assert!(alpha_from_ggm(0.6).is_err());
        assert!(alpha_from_ggm(-0.1).is_err());
        assert!(alpha_from_ggm(f64::NAN).is_err());
    }

    #[test]
    fn theorem_check_examples() {
        assert!(theorem_check(&named_state(NamedState::Ghz)).unwrap().abs() < 1e-12);
        assert!(
            theorem_check(&named_state(NamedState::BellAbTimes0))
                .unwrap()
                .abs()
                < 1e-9
        );
        // W: δ_G = 1/3, every marginal has spectrum {2/3, 1/3} so C_adv(W) = 0
        let w = theorem_check(&named_state(NamedState::W)).unwrap();
        let expect = 1.0 - binary_entropy(2.0 / 3.0).unwrap();
        assert!((w - expect).abs() < 1e-9, "{w} vs {expect}");
        assert!(w > 0.08);
    }

    #[test]
    fn envelope_endpoints() {
        let env = mdcc_envelope(
            EnvelopeMeasure::Tangle,
            &alpha_grid(0.0, 1.0, 11),
            &RecordOptions::default(),
        )
        .unwrap();
        let first = &env.points[0].record;
        assert!((first.ggm - 0.5).abs() < 1e-12);
        assert!((first.tangle - 1.0).abs() < 1e-12);
        assert_eq!(first.c_adv, 0.0);
        let last = &env.points[10].record;
        assert!(last.ggm.abs() < 1e-12);
        assert!(last.tangle.abs() < 1e-9);
        assert!((last.c_adv - 1.0).abs() < 1e-12);
        assert_eq!(last.alpha, Some(1.0));
        assert!((env.value_at(-1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(env.value_at(2.0).unwrap().abs() < 1e-9);
    }

    #[test]
    fn interpolation_is_linear_between_knots() {
        let curve = [(0.0, 1.0), (0.5, 0.5), (1.0, 0.0)];
        assert_eq!(interpolate(&curve, 0.25), Some(0.75));
        assert_eq!(interpolate(&curve, 0.5), Some(0.5));
        assert_eq!(interpolate(&[], 0.5), None);
    }

    #[test]
    fn verify_batch_flags_corrupted_records() {
        let mut records: Vec<MeasureRecord> = alpha_grid(0.0, 1.0, 11)
            .into_iter()
            .enumerate()
            .map(|(i, a)| mdcc_record(a, i as u64, &RecordOptions::default()).unwrap())
            .collect();
        let reports = verify_batch(&records, &[BoundKind::Ggm, BoundKind::Tangle], 1e-9);
        assert!(reports.iter().all(|r| r.passed()));
        assert!(reports.iter().all(|r| r.max_slack.abs() <= 1e-9));
        records[4].c_adv = 2.0;
        let reports = verify_batch(&records, &[BoundKind::Ggm], 1e-9);
        assert_eq!(reports[0].violations, 1);
        assert_eq!(reports[0].worst_state_id, Some(4));
    }

    #[test]
    fn class_tag_names() {
        for c in [
            ClassTag::Haar,
            ClassTag::GhzClass,
            ClassTag::WClass,
            ClassTag::Mdcc,
        ] {
            assert_eq!(c.as_str().parse::<ClassTag>().unwrap(), c);
        }
        assert!("ghz-class".parse::<ClassTag>().is_err());
    }
}
