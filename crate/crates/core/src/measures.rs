//! Multipartite correlation measures of three-qubit pure states: the
//! generalized geometric measure, concurrence and tangle, quantum discord and
//! the discord monogamy score.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    herm_eigen, herm_eigvals, psd_sqrt, qubit_eigenvalues, shannon_entropy, tensor,
    von_neumann_entropy, ComplexMatrix, DensityMatrix, C64,
};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::party::{Party, PartySet};
use crate::states::PureState3Q;

/// Tangle values in `[-TANGLE_CLAMP, 0)` are reported as 0.
pub const TANGLE_CLAMP: f64 = 1e-8;
/// Discord values in `[-DISCORD_CLAMP, 0)` are reported as 0.
pub const DISCORD_CLAMP: f64 = 1e-6;
/// Measurement outcomes rarer than this contribute nothing to the conditional entropy.
pub const OUTCOME_CUTOFF: f64 = 1e-12;
/// Polar and azimuthal grid sizes of the coarse basis search.
pub const DISCORD_GRID: (usize, usize) = (64, 128);

// eigenvalues of ρ below this are outside its support
const SUPPORT_CUTOFF: f64 = 1e-14;

/// Generalized geometric measure: `1 − max(λ_A, λ_B, λ_C)` over the largest
/// single-party marginal eigenvalues. For three qubits every bipartition has a
/// single party on one side, so this is the full maximization.
pub fn ggm(state: &PureState3Q) -> Result<f64> {
    let mut lam = 0.0f64;
    for p in Party::ALL {
        lam = lam.max(state.reduced(p)?.spectrum()?.max());
    }
    Ok((1.0 - lam).clamp(0.0, 0.5))
}

fn spin_flip() -> ComplexMatrix {
    let y = ComplexMatrix::pauli_y();
    tensor(&y, &y).expect("2x2 ⊗ 2x2")
}

fn check_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "expected a two-qubit (4x4) state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(())
}

/// Concurrence of a two-qubit state from the spectrum of `√ρ ρ̃ √ρ`, with
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
///
/// The product is formed on the support of ρ. Writing `ρ = A A†` with the
/// columns of `A` the weighted eigenvectors, the nonzero spectrum of
/// `√ρ ρ̃ √ρ` is that of `T†T` with `T = Aᵀ (σy⊗σy) A`. For rank ≤ 2 (every
/// two-party marginal of a pure three-qubit state) the square roots are read
/// off `T` directly as singular values, avoiding the `√ε` loss that square
/// roots of near-zero eigenvalues would otherwise introduce.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    check_two_qubit(rho)?;
    let eig = herm_eigen(rho.matrix())?;
    if let Some(&neg) = eig.values.iter().find(|&&x| x < -1e-8) {
        return Err(Error::NegativeEigenvalue(neg));
    }
    let support: Vec<usize> = (0..4).filter(|&k| eig.values[k] > SUPPORT_CUTOFF).collect();
    if support.len() > 2 {
        return concurrence_full_product(rho);
    }

    let yy = spin_flip();
    let column = |k: usize| -> Vec<C64> {
        let w = eig.values[k].sqrt();
        (0..4).map(|i| eig.vectors[(i, k)] * w).collect()
    };
    let cols: Vec<Vec<C64>> = support.iter().map(|&k| column(k)).collect();
    let bilinear = |x: &[C64], y: &[C64]| -> C64 {
        let yy_y = yy.apply(y);
        x.iter().zip(&yy_y).map(|(a, b)| a * b).sum()
    };

    let lambdas = match cols.len() {
        1 => [bilinear(&cols[0], &cols[0]).norm(), 0.0],
        _ => {
            let t00 = bilinear(&cols[0], &cols[0]);
            let t01 = bilinear(&cols[0], &cols[1]);
            let t10 = bilinear(&cols[1], &cols[0]);
            let t11 = bilinear(&cols[1], &cols[1]);
            let fro = t00.norm_sqr() + t01.norm_sqr() + t10.norm_sqr() + t11.norm_sqr();
            let det = (t00 * t11 - t01 * t10).norm();
            let disc = (fro * fro - 4.0 * det * det).max(0.0).sqrt();
            let s1 = (0.5 * (fro + disc)).sqrt();
            let s2 = if s1 > 0.0 { det / s1 } else { 0.0 };
            [s1, s2]
        }
    };
    Ok((lambdas[0] - lambdas[1]).clamp(0.0, 1.0))
}

/// Concurrence through the full 4×4 product `√ρ ρ̃ √ρ`.
pub fn concurrence_full_product(rho: &DensityMatrix) -> Result<f64> {
    check_two_qubit(rho)?;
    let root = psd_sqrt(rho)?;
    let yy = spin_flip();
    let flipped = &(&yy * &rho.matrix().conj()) * &yy;
    let prod = &(&root * &flipped) * &root;
    // symmetrize rounding noise
    let prod = (&prod + &prod.adjoint()).scale(0.5);
    let spec = herm_eigvals(&prod)?;
    let l: Vec<f64> = spec
        .eigenvalues
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .collect();
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// `C²` of the pure cut `nodal : rest`, i.e. `4 det ρ_nodal`.
pub fn pure_cut_concurrence_sq(state: &PureState3Q, nodal: Party) -> Result<f64> {
    let spec = state.reduced(nodal)?.spectrum()?;
    Ok((4.0 * spec.max() * spec.min()).clamp(0.0, 1.0))
}

/// Two-party marginal with `first` as the first qubit.
pub fn ordered_pair(state: &PureState3Q, first: Party, second: Party) -> Result<DensityMatrix> {
    if first == second {
        return Err(Error::InvalidPartySet(format!("pair ({first}, {second})")));
    }
    let rho = state.reduced(PartySet::of(&[first, second]))?;
    if first < second {
        Ok(rho)
    } else {
        rho.swap_qubits()
    }
}

/// Three-tangle `C²_{X:YZ} − C²_{XY} − C²_{XZ}` with `X = nodal`.
pub fn tangle(state: &PureState3Q, nodal: Party) -> Result<f64> {
    let mut t = pure_cut_concurrence_sq(state, nodal)?;
    for other in nodal.others() {
        let c = concurrence(&ordered_pair(state, nodal, other)?)?;
        t -= c * c;
    }
    if (-TANGLE_CLAMP..0.0).contains(&t) {
        t = 0.0;
    }
    Ok(t.min(1.0))
}

/// Rank-one projective measurement `{|v><v|, 1 − |v><v|}` with
/// `|v> = (cos θ/2, e^{iφ} sin θ/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub const COMPUTATIONAL: MeasurementBasis = MeasurementBasis {
        theta: 0.0,
        phi: 0.0,
    };

    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Same projector pair with `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn canonical(self) -> Self {
        let mut theta = self.theta.rem_euclid(TAU);
        let mut phi = self.phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    /// `|v>` and its orthogonal complement.
    pub fn vectors(self) -> [[C64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let e = C64::from_polar(1.0, self.phi);
        [[C64::new(c, 0.0), e * s], [-e.conj() * s, C64::new(c, 0.0)]]
    }

    pub fn projectors(self) -> [ComplexMatrix; 2] {
        self.vectors()
            .map(|v| ComplexMatrix::outer(&v).expect("2-dimensional vector"))
    }
}

/// `Σᵢ pᵢ S(ρ_{1|i})` for a measurement of the second qubit in `basis`.
pub fn conditional_entropy(rho: &DensityMatrix, basis: MeasurementBasis) -> Result<f64> {
    check_two_qubit(rho)?;
    Ok(conditional_entropy_unchecked(rho.matrix(), basis))
}

fn conditional_entropy_unchecked(m: &ComplexMatrix, basis: MeasurementBasis) -> f64 {
    let mut total = 0.0;
    for u in basis.vectors() {
        // σ[a][a'] = Σ_{b,b'} conj(u_b) ρ[(a,b),(a',b')] u_{b'}
        let block = |a: usize, a2: usize| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..2 {
                for b2 in 0..2 {
                    acc += u[b].conj() * m[(2 * a + b, 2 * a2 + b2)] * u[b2];
                }
            }
            acc
        };
        let s00 = block(0, 0).re;
        let s11 = block(1, 1).re;
        let p = s00 + s11;
        if p < OUTCOME_CUTOFF {
            continue;
        }
        let s01 = block(0, 1);
        let (hi, lo) = qubit_eigenvalues(s00 / p, s11 / p, s01 / p);
        total += p * shannon_entropy(&[hi.clamp(0.0, 1.0), lo.clamp(0.0, 1.0)]);
    }
    total
}

/// Which qubit of a two-party marginal is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasuredParty {
    #[default]
    Second,
    First,
}

impl fmt::Display for MeasuredParty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasuredParty::Second => "second",
            MeasuredParty::First => "first",
        })
    }
}

impl FromStr for MeasuredParty {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "second" => Ok(MeasuredParty::Second),
            "first" => Ok(MeasuredParty::First),
            other => Err(format!("unknown measured-party convention `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    pub value: f64,
    pub optimal_basis: MeasurementBasis,
    /// Objective evaluations, grid plus refinement.
    pub iterations: usize,
    /// False when the refinement ran out of evaluations; `value` is then the best found.
    pub converged: bool,
}

fn discord_grid() -> impl Iterator<Item = MeasurementBasis> {
    let (nt, np) = DISCORD_GRID;
    (0..nt).flat_map(move |i| {
        let theta = PI * i as f64 / (nt - 1) as f64;
        // the poles are a single basis each
        let n_phi = if i == 0 || i == nt - 1 { 1 } else { np };
        (0..n_phi).map(move |j| MeasurementBasis::new(theta, TAU * j as f64 / np as f64))
    })
}

/// Quantum discord of a two-qubit state with the second qubit measured:
/// `S(ρ_2) − S(ρ_12) + min over bases of the conditional entropy`.
///
/// The minimum is located on a 64×128 `(θ, φ)` grid and polished by
/// Nelder–Mead (simplex diameter 1e-9, at most 500 evaluations).
pub fn discord(rho: &DensityMatrix) -> Result<DiscordResult> {
    check_two_qubit(rho)?;
    let s_measured = von_neumann_entropy(&crate::linalg::partial_trace(
        rho,
        PartySet::single(Party::B),
    )?)?;
    let s_joint = von_neumann_entropy(rho)?;
    let m = rho.matrix();

    let mut evals = 0;
    let mut best = (MeasurementBasis::COMPUTATIONAL, f64::INFINITY);
    for basis in discord_grid() {
        evals += 1;
        let v = conditional_entropy_unchecked(m, basis);
        if v < best.1 {
            best = (basis, v);
        }
    }

    let (nt, np) = DISCORD_GRID;
    let refined = nelder_mead(
        |x: &[f64; 2]| conditional_entropy_unchecked(m, MeasurementBasis::new(x[0], x[1])),
        [best.0.theta, best.0.phi],
        [PI / (nt - 1) as f64, TAU / np as f64],
        NelderMeadOptions::default(),
    );
    evals += refined.evals;
    let (basis, min_ce) = if refined.value <= best.1 {
        (
            MeasurementBasis::new(refined.point[0], refined.point[1]).canonical(),
            refined.value,
        )
    } else {
        best
    };

    let mut value = s_measured - s_joint + min_ce;
    if (-DISCORD_CLAMP..0.0).contains(&value) {
        value = 0.0;
    }
    Ok(DiscordResult {
        value,
        optimal_basis: basis,
        iterations: evals,
        converged: refined.converged,
    })
}

/// Discord with the chosen qubit measured.
pub fn discord_measuring(rho: &DensityMatrix, measured: MeasuredParty) -> Result<DiscordResult> {
    match measured {
        MeasuredParty::Second => discord(rho),
        MeasuredParty::First => discord(&rho.swap_qubits()?),
    }
}

/// `D_{X:YZ}` for a pure global state, which equals `S(ρ_X)`.
pub fn discord_pure_cut(state: &PureState3Q, nodal: Party) -> Result<f64> {
    von_neumann_entropy(&state.reduced(nodal)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscordScore {
    /// `D_{X:YZ} − D_{XY} − D_{XZ}`; negative values mean non-monogamy.
    pub value: f64,
    pub cut: f64,
    pub pairs: [DiscordResult; 2],
}

impl DiscordScore {
    pub fn converged(&self) -> bool {
        self.pairs.iter().all(|d| d.converged)
    }
}

/// Discord monogamy score with `nodal` as the hub. In each pair the marginal is
/// ordered `(nodal, other)` and `measured` picks which one is measured.
pub fn discord_monogamy_score(
    state: &PureState3Q,
    nodal: Party,
    measured: MeasuredParty,
) -> Result<DiscordScore> {
    let cut = discord_pure_cut(state, nodal)?;
    let [o1, o2] = nodal.others();
    let d1 = discord_measuring(&ordered_pair(state, nodal, o1)?, measured)?;
    let d2 = discord_measuring(&ordered_pair(state, nodal, o2)?, measured)?;
    Ok(DiscordScore {
        value: cut - d1.value - d2.value,
        cut,
        pairs: [d1, d2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{mdcc, named_state, NamedState, RngStream};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn bell() -> DensityMatrix {
        let s = 0.5f64.sqrt();
        DensityMatrix::pure(&[c(s), c(0.0), c(0.0), c(s)]).unwrap()
    }

    fn classical_mixture() -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap()).unwrap()
    }

    fn pure2(a: C64, b: C64, cc: C64, d: C64) -> DensityMatrix {
        let n = (a.norm_sqr() + b.norm_sqr() + cc.norm_sqr() + d.norm_sqr()).sqrt();
        DensityMatrix::pure(&[a / n, b / n, cc / n, d / n]).unwrap()
    }

    #[test]
    fn ggm_examples() {
        assert!((ggm(&named_state(NamedState::Ghz)).unwrap() - 0.5).abs() < 1e-15);
        assert!(ggm(&named_state(NamedState::Product000)).unwrap().abs() < 1e-15);
        assert!((ggm(&mdcc(0.5).unwrap()).unwrap() - 0.1).abs() < 1e-14);
        assert!((ggm(&named_state(NamedState::W)).unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-10);
        let p00 = DensityMatrix::new(ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]).unwrap())
            .unwrap();
        assert_eq!(concurrence(&p00).unwrap(), 0.0);
        assert_eq!(concurrence(&classical_mixture()).unwrap(), 0.0);
        assert_eq!(
            concurrence(&DensityMatrix::maximally_mixed(4).unwrap()).unwrap(),
            0.0
        );
        assert!(concurrence(&DensityMatrix::maximally_mixed(2).unwrap()).is_err());
    }

    #[test]
    fn concurrence_of_pure_two_qubit_states_is_twice_the_determinant() {
        let mut rng = RngStream::from_u64(5);
        for _ in 0..200 {
            let [a, b, cc, d] = std::array::from_fn(|_| rng.complex_normal());
            let rho = pure2(a, b, cc, d);
            let n2 = a.norm_sqr() + b.norm_sqr() + cc.norm_sqr() + d.norm_sqr();
            let expect = 2.0 * (a * d - b * cc).norm() / n2;
            assert!((concurrence(&rho).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn support_route_matches_full_product() {
        let mut rng = RngStream::from_u64(9);
        for _ in 0..200 {
            let s = crate::states::haar_random(&mut rng);
            let rho = s.reduced(PartySet::of(&[Party::A, Party::C])).unwrap();
            let a = concurrence(&rho).unwrap();
            let b = concurrence_full_product(&rho).unwrap();
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn concurrence_of_werner_states() {
        // p·Bell + (1−p)·I/4 has C = max(0, (3p − 1)/2)
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let m = &bell().matrix().scale(p)
                + &ComplexMatrix::identity(4).unwrap().scale((1.0 - p) / 4.0);
            let rho = DensityMatrix::new(m).unwrap();
            let expect = ((3.0 * p - 1.0) / 2.0).max(0.0);
            assert!((concurrence(&rho).unwrap() - expect).abs() < 1e-10, "p={p}");
        }
    }

    #[test]
    fn mdcc_ac_concurrence_closed_form() {
        for alpha in [0.25, 0.5, 2.0] {
            let s = mdcc(alpha).unwrap();
            let rho = s.reduced(PartySet::of(&[Party::A, Party::C])).unwrap();
            let expect = 2.0 * alpha / (1.0 + alpha * alpha);
            assert!((concurrence(&rho).unwrap() - expect).abs() < 1e-12);
            let rab = s.reduced(PartySet::of(&[Party::A, Party::B])).unwrap();
            assert!(concurrence(&rab).unwrap() < 1e-12);
        }
    }

    #[test]
    fn pure_cut_examples() {
        let ghz = named_state(NamedState::Ghz);
        assert!((pure_cut_concurrence_sq(&ghz, Party::A).unwrap() - 1.0).abs() < 1e-15);
        let p = named_state(NamedState::Product000);
        assert_eq!(pure_cut_concurrence_sq(&p, Party::A).unwrap(), 0.0);
        for alpha in [0.0, 0.3, 1.0, 3.0] {
            let v = pure_cut_concurrence_sq(&mdcc(alpha).unwrap(), Party::A).unwrap();
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn tangle_examples() {
        assert!((tangle(&named_state(NamedState::Ghz), Party::A).unwrap() - 1.0).abs() < 1e-12);
        assert!(tangle(&named_state(NamedState::W), Party::A).unwrap().abs() <= 1e-8);
        for alpha in [0.0f64, 0.25, 0.5, 1.0, 1.5] {
            let a2 = alpha * alpha;
            let expect = (1.0 - a2).powi(2) / (1.0 + a2).powi(2);
            let t = tangle(&mdcc(alpha).unwrap(), Party::A).unwrap();
            assert!((t - expect).abs() < 1e-9, "α={alpha}: {t} vs {expect}");
        }
    }

    #[test]
    fn basis_canonicalization_preserves_projectors() {
        let mut rng = RngStream::from_u64(17);
        for _ in 0..100 {
            let b =
                MeasurementBasis::new(20.0 * (rng.uniform() - 0.5), 20.0 * (rng.uniform() - 0.5));
            let cb = b.canonical();
            assert!((0.0..=PI).contains(&cb.theta));
            assert!((0.0..TAU).contains(&cb.phi));
            let [p, _] = b.projectors();
            let [q, _] = cb.projectors();
            assert!(p.max_abs_diff(&q) < 1e-12);
            let [b0, b1] = b.projectors();
            assert!((&b0 + &b1).max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn conditional_entropy_examples() {
        let mut rng = RngStream::from_u64(23);
        for _ in 0..5 {
            let basis = MeasurementBasis::new(PI * rng.uniform(), TAU * rng.uniform());
            assert!(conditional_entropy(&bell(), basis).unwrap().abs() < 1e-12);
        }
        assert_eq!(
            conditional_entropy(&classical_mixture(), MeasurementBasis::COMPUTATIONAL).unwrap(),
            0.0
        );
        // product state: measuring B leaves ρ_A untouched
        let ra = ComplexMatrix::from_real(2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        let rb = ComplexMatrix::from_diagonal(&[0.4, 0.6]).unwrap();
        let rho = DensityMatrix::new(tensor(&ra, &rb).unwrap()).unwrap();
        let sa = von_neumann_entropy(&DensityMatrix::new(ra).unwrap()).unwrap();
        for _ in 0..5 {
            let basis = MeasurementBasis::new(PI * rng.uniform(), TAU * rng.uniform());
            assert!((conditional_entropy(&rho, basis).unwrap() - sa).abs() < 1e-12);
        }
    }

    #[test]
    fn conditional_entropy_matches_projector_route() {
        // direct (I⊗Bᵢ) ρ (I⊗Bᵢ) evaluation as an independent check
        let mut rng = RngStream::from_u64(29);
        for _ in 0..50 {
            let s = crate::states::haar_random(&mut rng);
            let rho = s.reduced(PartySet::of(&[Party::A, Party::B])).unwrap();
            let basis = MeasurementBasis::new(PI * rng.uniform(), TAU * rng.uniform());
            let i2 = ComplexMatrix::identity(2).unwrap();
            let mut expect = 0.0;
            for proj in basis.projectors() {
                let k = tensor(&i2, &proj).unwrap();
                let post = &(&k * rho.matrix()) * &k;
                let p = post.trace().re;
                let post = DensityMatrix::new(post.scale(1.0 / p)).unwrap();
                let ra = crate::linalg::partial_trace(&post, Party::A.into()).unwrap();
                expect += p * von_neumann_entropy(&ra).unwrap();
            }
            let got = conditional_entropy(&rho, basis).unwrap();
            assert!((got - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn discord_examples() {
        let d = discord(&bell()).unwrap();
        assert!((d.value - 1.0).abs() < 1e-6);
        let d = discord(&classical_mixture()).unwrap();
        assert!(d.value.abs() < 1e-6);
        let ra = ComplexMatrix::from_real(2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        let rb = ComplexMatrix::from_real(2, &[0.4, 0.1, 0.1, 0.6]).unwrap();
        let rho = DensityMatrix::new(tensor(&ra, &rb).unwrap()).unwrap();
        let d = discord(&rho).unwrap();
        assert!(d.value.abs() < 1e-6);
        assert!(d.converged);
    }

    #[test]
    fn discord_of_werner_state() {
        // p·Bell + (1−p)·I/4: every basis leaves A with Bloch length p, so
        // D = 1 − S(ρ) + H((1 + p)/2)
        for p in [0.2f64, 0.6, 0.9] {
            let m = &bell().matrix().scale(p)
                + &ComplexMatrix::identity(4).unwrap().scale((1.0 - p) / 4.0);
            let rho = DensityMatrix::new(m).unwrap();
            let lo = (1.0 - p) / 4.0;
            let hi = (1.0 + 3.0 * p) / 4.0;
            let s_joint = -hi * hi.log2() - 3.0 * lo * lo.log2();
            let expect = 1.0 - s_joint + crate::linalg::binary_entropy(0.5 * (1.0 + p)).unwrap();
            let d = discord(&rho).unwrap();
            assert!(
                (d.value - expect).abs() < 1e-6,
                "p={p}: {} vs {expect}",
                d.value
            );
        }
    }

    #[test]
    fn discord_measuring_first_swaps_roles() {
        // |0>⟨0|⊗|0>⟨0| mixed with |1>⟨1|⊗|+>⟨+|: classical on A, not on B
        let mut m = ComplexMatrix::zeros(4).unwrap();
        m[(0, 0)] = c(0.5);
        m[(2, 2)] = c(0.25);
        m[(3, 3)] = c(0.25);
        m[(2, 3)] = c(0.25);
        m[(3, 2)] = c(0.25);
        let rho = DensityMatrix::new(m).unwrap();
        let first = discord_measuring(&rho, MeasuredParty::First).unwrap();
        assert!(first.value.abs() < 1e-6, "{}", first.value);
        let second = discord_measuring(&rho, MeasuredParty::Second).unwrap();
        assert!(second.value > 1e-3, "{}", second.value);
    }

    #[test]
    fn discord_pure_cut_and_score_examples() {
        let ghz = named_state(NamedState::Ghz);
        assert!((discord_pure_cut(&ghz, Party::A).unwrap() - 1.0).abs() < 1e-14);
        let p = named_state(NamedState::Product000);
        assert_eq!(discord_pure_cut(&p, Party::A).unwrap(), 0.0);
        for alpha in [0.0, 0.7, 1.0] {
            let v = discord_pure_cut(&mdcc(alpha).unwrap(), Party::A).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }

        let s = discord_monogamy_score(&ghz, Party::A, MeasuredParty::Second).unwrap();
        assert!((s.value - 1.0).abs() < 1e-6);
        let s = discord_monogamy_score(&p, Party::A, MeasuredParty::Second).unwrap();
        assert!(s.value.abs() < 1e-6);
        let s =
            discord_monogamy_score(&named_state(NamedState::W), Party::A, MeasuredParty::Second)
                .unwrap();
        assert!(s.value < 0.0);
    }
}
