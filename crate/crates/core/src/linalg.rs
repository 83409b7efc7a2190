//! Small dense complex matrices (dimension 2, 4 or 8) and the operations the
//! correlation measures need: products, tensor products, partial traces,
//! Hermitian eigendecomposition by cyclic Jacobi rotations, PSD square roots
//! and entropies.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::party::PartySet;

pub type C64 = Complex64;

/// Max entrywise deviation from Hermiticity accepted by [`DensityMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Max deviation of the trace from 1 accepted by [`DensityMatrix::new`].
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are noise and read as 0.
pub const EIGEN_CLAMP: f64 = 1e-10;
/// Eigenvalues below this contribute nothing to an entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-15;

const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;
const EIGEN_INPUT_HERMITIAN_TOL: f64 = 1e-10;
const SQRT_NEGATIVE_TOL: f64 = 1e-8;

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Row-major square complex matrix of dimension 2, 4 or 8.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                got: entries.len(),
                expected: dim * dim,
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Ok(m)
    }

    /// The projector `|v><v|` (not normalized).
    pub fn outer(v: &[C64]) -> Result<Self> {
        let dim = v.len();
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        Ok(m)
    }

    pub fn pauli_y() -> Self {
        let i = C64::new(0.0, 1.0);
        let z = C64::new(0.0, 0.0);
        Self {
            dim: 2,
            entries: vec![z, -i, i, z],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.entries[j * n + i].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * k).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest `|M[i][j] - conj(M[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * v[j]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics when the dimensions differ.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut entries = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        ComplexMatrix { dim: n, entries }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Kronecker product `a ⊗ b`, `a` being the more significant factor.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (da, db) = (a.dim, b.dim);
    if da * db > 8 {
        return Err(Error::DimensionOverflow(da, db));
    }
    let n = da * db;
    let mut out = ComplexMatrix::zeros(n)?;
    for i1 in 0..da {
        for j1 in 0..da {
            let x = a[(i1, j1)];
            for i2 in 0..db {
                for j2 in 0..db {
                    out[(i1 * db + i2, j1 * db + j2)] = x * b[(i2, j2)];
                }
            }
        }
    }
    Ok(out)
}

/// Hermitian, unit-trace operator. Positivity is checked when the spectrum is read.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::BadTrace(tr.re));
        }
        Ok(Self { matrix })
    }

    /// `|v><v|` for a unit vector `v`.
    pub fn pure(v: &[C64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(v)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim)?.scale(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    /// Eigenvalues, descending, with noise-level negatives clamped to zero.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let mut spec = herm_eigvals(&self.matrix)?;
        for v in spec.eigenvalues.iter_mut() {
            if *v < 0.0 {
                if *v < -EIGEN_CLAMP {
                    return Err(Error::NegativeEigenvalue(*v));
                }
                *v = 0.0;
            }
            *v = v.min(1.0);
        }
        Ok(spec)
    }

    /// Swap the two qubits of a 4×4 state.
    pub fn swap_qubits(&self) -> Result<Self> {
        if self.dim() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "qubit swap needs a 4x4 state, got {}",
                self.dim()
            )));
        }
        let swap = |i: usize| ((i & 1) << 1) | (i >> 1);
        let mut m = ComplexMatrix::zeros(4)?;
        for i in 0..4 {
            for j in 0..4 {
                m[(swap(i), swap(j))] = self.matrix[(i, j)];
            }
        }
        Ok(Self { matrix: m })
    }
}

/// Descending real eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Shannon entropy of the eigenvalues in bits.
    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.eigenvalues)
    }
}

/// `-Σ p log₂ p`, skipping entries below [`ENTROPY_CUTOFF`].
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    let h: f64 = probs
        .iter()
        .filter(|&&p| p >= ENTROPY_CUTOFF)
        .map(|&p| -p * p.log2())
        .sum();
    h.max(0.0)
}

/// Keep the parties in `keep`, tracing out the rest. An 8×8 input carries
/// parties A, B, C; a 4×4 input carries A, B.
pub fn partial_trace(rho: &DensityMatrix, keep: PartySet) -> Result<DensityMatrix> {
    let n = match rho.dim() {
        8 => 3,
        4 => 2,
        d => {
            return Err(Error::DimensionMismatch(format!(
                "partial trace needs a 4x4 or 8x8 state, got {d}x{d}"
            )))
        }
    };
    let kept: Vec<usize> = keep.parties().map(|p| p.position()).collect();
    if kept.iter().any(|&q| q >= n) {
        return Err(Error::InvalidPartySet(format!(
            "{keep} is not a subset of the {n} parties of this state"
        )));
    }
    if kept.is_empty() || kept.len() == n {
        return Err(Error::InvalidPartySet(format!(
            "keep set {keep} must be a nonempty proper subset"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
    let bit = |q: usize| 1usize << (n - 1 - q);
    // scatter a sub-index over the given qubit positions
    let embed = |positions: &[usize], idx: usize| -> usize {
        let k = positions.len();
        positions
            .iter()
            .enumerate()
            .filter(|(r, _)| idx & (1 << (k - 1 - r)) != 0)
            .map(|(_, &q)| bit(q))
            .sum()
    };
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let mut out = ComplexMatrix::zeros(dk)?;
    for i in 0..dk {
        let bi = embed(&kept, i);
        for j in 0..dk {
            let bj = embed(&kept, j);
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..dt {
                let bt = embed(&traced, t);
                acc += rho.matrix[(bi | bt, bj | bt)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix { matrix: out })
}

/// Eigenvalues (descending) and the matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

impl HermitianEigen {
    /// `Σ λᵢ vᵢ vᵢ†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.rebuild_with(|x| x)
    }

    fn rebuild_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim;
        let mut out = ComplexMatrix::zeros(n).expect("valid dimension");
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation. Sweeps stop once
/// the off-diagonal Frobenius norm is below `1e-13·‖m‖`.
pub fn herm_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let dev = m.hermitian_deviation();
    if dev > EIGEN_INPUT_HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.dim;
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n)?;
    let tol = JACOBI_TOL * a.frobenius_norm();

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(off));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * gqp;
                    a[(k, q)] = akp * s + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * gqp.conj();
                    a[(q, k)] = apk * s + aqk * gqq.conj();
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * gqp;
                    v[(k, q)] = vkp * s + vkq * gqq;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n)?;
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen {
        values,
        vectors,
        sweeps,
    })
}

pub fn herm_eigvals(m: &ComplexMatrix) -> Result<Spectrum> {
    herm_eigen(m).map(|e| Spectrum {
        eigenvalues: e.values,
    })
}

/// Hermitian PSD square root. Eigenvalues in `[-1e-8, 0)` are treated as zero.
pub fn psd_sqrt(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eigen(rho.matrix())?;
    if let Some(&neg) = eig.values.iter().find(|&&x| x < -SQRT_NEGATIVE_TOL) {
        return Err(Error::NegativeEigenvalue(neg));
    }
    Ok(eig.rebuild_with(|x| x.max(0.0).sqrt()))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(rho.spectrum()?.entropy())
}

/// Binary Shannon entropy `H(p)` in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) || p.is_nan() {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let p = p.clamp(0.0, 1.0);
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

/// Eigenvalues `(larger, smaller)` of the 2×2 Hermitian matrix `[[a, b], [b*, d]]`.
pub(crate) fn qubit_eigenvalues(a: f64, d: f64, b: C64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean + half_gap, mean - half_gap)
}
