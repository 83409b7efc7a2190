//! Three-qubit pure states: the MDCC family, named reference states and the
//! reproducible random samplers.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix, DensityMatrix, C64};
use crate::measures;
use crate::party::{Party, PartySet};

const NORM_TOL: f64 = 1e-12;
const MDCC_ALPHA_LIMIT: f64 = 1e6;
/// Haar draws with tangle at or below this are rejected by the GHZ-class sampler.
pub const GHZ_CLASS_TANGLE_THRESHOLD: f64 = 1e-6;
const GHZ_CLASS_MAX_REJECTIONS: usize = 100;
/// Lower bound on the `|100>`, `|010>`, `|001>` weights of W-class samples.
pub const W_CLASS_MIN_WEIGHT: f64 = 1e-6;

/// Normalized three-qubit pure state; amplitude `k` belongs to `|abc>` with `k = 4a + 2b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState3Q {
    amplitudes: [C64; 8],
}

impl PureState3Q {
    /// Renormalizes when the norm is off by more than `1e-12`.
    pub fn new(amplitudes: [C64; 8]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || norm_sq <= f64::MIN_POSITIVE {
            return Err(Error::NotNormalizable(norm_sq.sqrt()));
        }
        let mut amplitudes = amplitudes;
        if (norm_sq - 1.0).abs() > NORM_TOL {
            let k = 1.0 / norm_sq.sqrt();
            for z in amplitudes.iter_mut() {
                *z *= k;
            }
        }
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: [f64; 8]) -> Result<Self> {
        Self::new(amplitudes.map(|x| C64::new(x, 0.0)))
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::pure(&self.amplitudes).expect("normalized state gives a valid projector")
    }

    /// Marginal on the kept parties.
    pub fn reduced(&self, keep: impl Into<PartySet>) -> Result<DensityMatrix> {
        partial_trace(&self.density(), keep.into())
    }

    /// Apply a single-qubit operator `u` to `party`.
    pub fn apply_local(&self, party: Party, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "local operator must be 2x2, got {}x{}",
                u.dim(),
                u.dim()
            )));
        }
        let bit = 1usize << (2 - party.position());
        let mut out = [C64::new(0.0, 0.0); 8];
        for k in 0..8 {
            if k & bit != 0 {
                continue;
            }
            let (x0, x1) = (self.amplitudes[k], self.amplitudes[k | bit]);
            out[k] = u[(0, 0)] * x0 + u[(0, 1)] * x1;
            out[k | bit] = u[(1, 0)] * x0 + u[(1, 1)] * x1;
        }
        Self::new(out)
    }
}

/// `|000> + |111> + α(|101> + |010>)`, normalized.
pub fn mdcc(alpha: f64) -> Result<PureState3Q> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite(alpha));
    }
    if alpha.abs() > MDCC_ALPHA_LIMIT {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
        });
    }
    let mut amps = [0.0; 8];
    amps[0b000] = 1.0;
    amps[0b111] = 1.0;
    amps[0b101] = alpha;
    amps[0b010] = alpha;
    let k = 1.0 / (2.0 + 2.0 * alpha * alpha).sqrt();
    PureState3Q::from_real(amps.map(|x| x * k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    Ghz,
    W,
    Product000,
    BellAbTimes0,
}

impl NamedState {
    pub const ALL: [NamedState; 4] = [
        NamedState::Ghz,
        NamedState::W,
        NamedState::Product000,
        NamedState::BellAbTimes0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedState::Ghz => "ghz",
            NamedState::W => "w",
            NamedState::Product000 => "product000",
            NamedState::BellAbTimes0 => "bell_ab_times_0",
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedState::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    }
}

pub fn named_state(name: NamedState) -> PureState3Q {
    let mut amps = [0.0; 8];
    match name {
        NamedState::Ghz => {
            amps[0b000] = 0.5f64.sqrt();
            amps[0b111] = 0.5f64.sqrt();
        }
        NamedState::W => {
            let w = (1.0f64 / 3.0).sqrt();
            amps[0b001] = w;
            amps[0b010] = w;
            amps[0b100] = w;
        }
        NamedState::Product000 => amps[0b000] = 1.0,
        NamedState::BellAbTimes0 => {
            amps[0b000] = 0.5f64.sqrt();
            amps[0b110] = 0.5f64.sqrt();
        }
    }
    PureState3Q::from_real(amps).expect("reference states are normalizable")
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Combine a base seed and a sample index into one 64-bit substream key.
pub fn mix64(base_seed: u64, index: u64) -> u64 {
    let mut s = base_seed;
    let a = splitmix64(&mut s);
    let mut t = a ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    splitmix64(&mut t)
}

/// ChaCha20 stream with 256-bit seed material. Uniforms take the top 53 bits
/// of each 64-bit word, so sequences are identical on every platform.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: [u8; 32],
    rng: ChaCha20Rng,
}

impl RngStream {
    pub const ALGORITHM: &'static str = "chacha20";

    pub fn from_seed(seed: [u8; 32]) -> Self {
        Self {
            seed,
            rng: ChaCha20Rng::from_seed(seed),
        }
    }

    /// Seed material expanded from one 64-bit key with SplitMix64.
    pub fn from_u64(key: u64) -> Self {
        let mut s = key;
        let mut seed = [0u8; 32];
        for chunk in seed.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut s).to_le_bytes());
        }
        Self::from_seed(seed)
    }

    /// Independent substream for sample `index` of a run seeded with `base_seed`.
    pub fn for_sample(base_seed: u64, index: u64) -> Self {
        Self::from_u64(mix64(base_seed, index))
    }

    pub fn seed(&self) -> &[u8; 32] {
        &self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, 1]`.
    pub fn uniform_open0(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    /// Two independent standard normals via Box–Muller.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let r = (-2.0 * self.uniform_open0().ln()).sqrt();
        let theta = std::f64::consts::TAU * self.uniform();
        (r * theta.cos(), r * theta.sin())
    }

    pub fn complex_normal(&mut self) -> C64 {
        let (re, im) = self.normal_pair();
        C64::new(re, im)
    }

    pub fn exponential(&mut self) -> f64 {
        -self.uniform_open0().ln()
    }
}

/// Haar-distributed pure state: normalized vector of complex Gaussians.
pub fn haar_random(rng: &mut RngStream) -> PureState3Q {
    loop {
        let amps: [C64; 8] = std::array::from_fn(|_| rng.complex_normal());
        if let Ok(s) = PureState3Q::new(amps) {
            return s;
        }
    }
}

/// `√a|100> + √b|010> + √c|001> + √d|000>` with `(a, b, c, d)` uniform on the
/// simplex and `a, b, c ≥ 1e-6`. Phases are dropped: every quantity computed
/// in this crate is invariant under local unitaries, which remove them.
pub fn w_class_random(rng: &mut RngStream) -> PureState3Q {
    loop {
        let e: [f64; 4] = std::array::from_fn(|_| rng.exponential());
        let total: f64 = e.iter().sum();
        let [a, b, c, d] = e.map(|x| x / total);
        if a < W_CLASS_MIN_WEIGHT || b < W_CLASS_MIN_WEIGHT || c < W_CLASS_MIN_WEIGHT {
            continue;
        }
        return w_canonical(a, b, c, d);
    }
}

/// W-class canonical form from simplex weights.
pub fn w_canonical(a: f64, b: f64, c: f64, d: f64) -> PureState3Q {
    let mut amps = [0.0; 8];
    amps[0b100] = a.sqrt();
    amps[0b010] = b.sqrt();
    amps[0b001] = c.sqrt();
    amps[0b000] = d.sqrt();
    PureState3Q::from_real(amps).expect("simplex weights are normalizable")
}

/// Haar draw accepted once its tangle exceeds [`GHZ_CLASS_TANGLE_THRESHOLD`].
pub fn ghz_class_random(rng: &mut RngStream) -> Result<PureState3Q> {
    for _ in 0..=GHZ_CLASS_MAX_REJECTIONS {
        let s = haar_random(rng);
        if measures::tangle(&s, Party::A)? > GHZ_CLASS_TANGLE_THRESHOLD {
            return Ok(s);
        }
    }
    Err(Error::TooManyRejections(GHZ_CLASS_MAX_REJECTIONS + 1))
}

/// Haar-random single-qubit unitary.
pub fn random_unitary(rng: &mut RngStream) -> ComplexMatrix {
    let (a, b) = (rng.complex_normal(), rng.complex_normal());
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = C64::from_polar(1.0, std::f64::consts::TAU * rng.uniform());
    ComplexMatrix::new(
        2,
        vec![a * phase, -b.conj() * phase, b * phase, a.conj() * phase],
    )
    .expect("2x2")
}

/// Apply an independent random unitary to every party.
pub fn random_local_rotation(state: &PureState3Q, rng: &mut RngStream) -> PureState3Q {
    Party::ALL.into_iter().fold(state.clone(), |s, p| {
        s.apply_local(p, &random_unitary(rng)).expect("2x2 unitary")
    })
}

/// Samplers for batch runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerClass {
    Haar,
    GhzClass,
    WClass,
}

impl SamplerClass {
    pub fn draw(self, rng: &mut RngStream) -> Result<PureState3Q> {
        match self {
            SamplerClass::Haar => Ok(haar_random(rng)),
            SamplerClass::GhzClass => ghz_class_random(rng),
            SamplerClass::WClass => Ok(w_class_random(rng)),
        }
    }

    /// Sample `index` of a run: independent of how indices are scheduled.
    pub fn sample(self, base_seed: u64, index: u64) -> Result<PureState3Q> {
        self.draw(&mut RngStream::for_sample(base_seed, index))
    }
}
