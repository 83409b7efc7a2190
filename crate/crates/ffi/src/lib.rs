//! C ABI over `mdcckit`.
//!
//! States are opaque heap handles created by one of the `mdcc_state_*`
//! constructors and released with [`mdcc_state_free`]. Every fallible call
//! returns an [`MdccStatus`]; on failure a description is available from
//! [`mdcc_last_error`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mdcckit::complementarity::{
    ggm_bound_slack, measure_state, tangle_bound_slack, theorem_check, ClassTag, RecordOptions,
};
use mdcckit::densecoding::advantage;
use mdcckit::linalg::C64;
use mdcckit::measures::MeasuredParty;
use mdcckit::states::{self, NamedState, PureState3Q};
use mdcckit::Party;

/// Opaque three-qubit pure state.
pub struct MdccState(PureState3Q);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numerical = 3,
    Panic = 4,
}

/// All per-state measures. `discord_score` is NaN when discord was not
/// requested; `best_receiver` is 0, 1, 2 for A, B, C and -1 when there is no
/// advantage.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MdccMeasures {
    pub s_a: f64,
    pub s_b: f64,
    pub s_c: f64,
    pub ggm: f64,
    pub tangle: f64,
    pub discord_score: f64,
    pub c_adv: f64,
    pub ggm_slack: f64,
    pub tangle_slack: f64,
    pub best_receiver: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), (MdccStatus, String)>) -> MdccStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MdccStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MdccStatus::Panic
        }
    }
}

fn numerical(e: mdcckit::Error) -> (MdccStatus, String) {
    (MdccStatus::Numerical, e.to_string())
}

fn invalid(e: impl ToString) -> (MdccStatus, String) {
    (MdccStatus::InvalidArgument, e.to_string())
}

fn null(what: &str) -> (MdccStatus, String) {
    (MdccStatus::NullPointer, format!("{what} is null"))
}

fn party(index: u32) -> Result<Party, (MdccStatus, String)> {
    Party::ALL
        .get(index as usize)
        .copied()
        .ok_or_else(|| invalid(format!("party index {index} out of range 0..=2")))
}

unsafe fn emit(out: *mut *mut MdccState, state: PureState3Q) -> Result<(), (MdccStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(MdccState(state)));
    Ok(())
}

/// Description of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn mdcc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mdcc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a state from 8 amplitudes in basis order `|abc>` (index `4a+2b+c`).
/// `im` may be null for real amplitudes. The state is renormalized.
///
/// # Safety
/// `re` (and `im` when non-null) must point to 8 readable doubles; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn mdcc_state_from_amplitudes(
    re: *const f64,
    im: *const f64,
    out: *mut *mut MdccState,
) -> MdccStatus {
    guard(|| {
        if re.is_null() {
            return Err(null("re"));
        }
        let re = std::slice::from_raw_parts(re, 8);
        let im = if im.is_null() {
            [0.0; 8].as_slice()
        } else {
            std::slice::from_raw_parts(im, 8)
        };
        let amps: [C64; 8] = std::array::from_fn(|i| C64::new(re[i], im[i]));
        emit(out, PureState3Q::new(amps).map_err(invalid)?)
    })
}

/// `|000> + |111> + α(|101> + |010>)`, normalized.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdcc_state_mdcc(alpha: f64, out: *mut *mut MdccState) -> MdccStatus {
    guard(|| emit(out, states::mdcc(alpha).map_err(invalid)?))
}

/// One of `ghz`, `w`, `product000`, `bell_ab_times_0`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdcc_state_named(
    name: *const c_char,
    out: *mut *mut MdccState,
) -> MdccStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name).to_str().map_err(invalid)?;
        let named: NamedState = name.parse().map_err(invalid)?;
        emit(out, states::named_state(named))
    })
}

/// Release a state. Null is ignored.
///
/// # Safety
/// `state` must come from an `mdcc_state_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mdcc_state_free(state: *mut MdccState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Copy the normalized amplitudes into `re[8]` and `im[8]`.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must point to 8 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn mdcc_state_amplitudes(
    state: *const MdccState,
    re: *mut f64,
    im: *mut f64,
) -> MdccStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if re.is_null() || im.is_null() {
            return Err(null("output buffer"));
        }
        for (i, a) in state.0.amplitudes().iter().enumerate() {
            *re.add(i) = a.re;
            *im.add(i) = a.im;
        }
        Ok(())
    })
}

/// Compute every measure with `sender` (0, 1, 2 for A, B, C) as the dense-coding
/// sender and discord hub. Discord is optional since it dominates the cost;
/// `measure_first` selects which qubit of each pair is measured.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdcc_state_measures(
    state: *const MdccState,
    sender: u32,
    with_discord: bool,
    measure_first: bool,
    out: *mut MdccMeasures,
) -> MdccStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let sender = party(sender)?;
        let opts = RecordOptions {
            sender,
            with_discord,
            measured: if measure_first {
                MeasuredParty::First
            } else {
                MeasuredParty::Second
            },
        };
        let rec = measure_state(&state.0, 0, ClassTag::Haar, None, &opts)
            .map_err(numerical)?
            .record;
        let adv = advantage(&state.0, sender).map_err(numerical)?;
        *out = MdccMeasures {
            s_a: rec.s_a,
            s_b: rec.s_b,
            s_c: rec.s_c,
            ggm: rec.ggm,
            tangle: rec.tangle,
            discord_score: rec.discord_score.unwrap_or(f64::NAN),
            c_adv: rec.c_adv,
            ggm_slack: ggm_bound_slack(&rec).map_err(numerical)?,
            tangle_slack: tangle_bound_slack(&rec).map_err(numerical)?,
            best_receiver: adv.best_receiver.map_or(-1, |p| p.position() as i32),
        };
        Ok(())
    })
}

/// Margin by which the GGM-matched MDCC state dominates `state` in dense-coding
/// advantage (sender A); non-negative up to round-off.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdcc_state_theorem_margin(
    state: *const MdccState,
    out: *mut f64,
) -> MdccStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = theorem_check(&state.0).map_err(numerical)?;
        Ok(())
    })
}
