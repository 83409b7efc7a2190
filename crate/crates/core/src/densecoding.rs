//! Dense-coding capacity and the multiport quantum advantage.

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, von_neumann_entropy, DensityMatrix};
use crate::party::{Party, PartySet};
use crate::states::PureState3Q;

/// Coherent information must exceed this for a state to count as dense codeable.
pub const CODEABLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capacity {
    /// Bits per use of the `d_A`-dimensional channel.
    pub value: f64,
    pub coherent_information: f64,
    pub dense_codeable: bool,
}

/// `max{log₂ d_A, log₂ d_A + S(ρ_B) − S(ρ_AB)}` where the sender holds the
/// first `dim_a` dimensions of `rho_ab`.
pub fn capacity(rho_ab: &DensityMatrix, dim_a: usize) -> Result<Capacity> {
    let receiver = match (rho_ab.dim(), dim_a) {
        (4, 2) => PartySet::single(Party::B),
        (8, 2) => PartySet::of(&[Party::B, Party::C]),
        (8, 4) => PartySet::single(Party::C),
        (d, a) => {
            return Err(Error::DimensionMismatch(format!(
                "sender dimension {a} does not split a {d}x{d} state"
            )))
        }
    };
    let s_b = von_neumann_entropy(&partial_trace(rho_ab, receiver)?)?;
    let s_ab = von_neumann_entropy(rho_ab)?;
    let coherent = s_b - s_ab;
    let log_da = (dim_a as f64).log2();
    Ok(Capacity {
        value: log_da + coherent.max(0.0),
        coherent_information: coherent,
        dense_codeable: coherent > CODEABLE_TOL,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageResult {
    pub value: f64,
    /// `None` when no receiver has positive coherent information.
    pub best_receiver: Option<Party>,
}

/// `S(ρ_R) − S(ρ_{sender,R})` from the two-party marginal.
pub fn coherent_information(state: &PureState3Q, sender: Party, receiver: Party) -> Result<f64> {
    if sender == receiver {
        return Err(Error::InvalidPartySet(format!(
            "sender and receiver are both {sender}"
        )));
    }
    let s_r = von_neumann_entropy(&state.reduced(receiver)?)?;
    let s_sr = von_neumann_entropy(&state.reduced(PartySet::of(&[sender, receiver]))?)?;
    Ok(s_r - s_sr)
}

/// Same quantity through the Schmidt identity `S(ρ_{sender,R}) = S(ρ_rest)`.
pub fn coherent_information_schmidt(
    state: &PureState3Q,
    sender: Party,
    receiver: Party,
) -> Result<f64> {
    let rest = PartySet::of(&[sender, receiver]).complement();
    let s_r = von_neumann_entropy(&state.reduced(receiver)?)?;
    let s_rest = von_neumann_entropy(&state.reduced(rest)?)?;
    Ok(s_r - s_rest)
}

/// Multiport advantage `max(S_R − S_{sender,R} over receivers, 0)`; ties go to
/// the alphabetically first receiver.
pub fn advantage(state: &PureState3Q, sender: Party) -> Result<AdvantageResult> {
    let mut best = AdvantageResult {
        value: 0.0,
        best_receiver: None,
    };
    for r in sender.others() {
        let ci = coherent_information(state, sender, r)?;
        if ci > CODEABLE_TOL && ci > best.value {
            best = AdvantageResult {
                value: ci.min(1.0),
                best_receiver: Some(r),
            };
        }
    }
    Ok(best)
}
