//! The classical bounds: Weil, Weil–Serre and Ihara, together with the
//! genus thresholds `g₂` and `g₃` that delimit the Ihara range.
//!
//! Every bound is stated on the trace `t₁ = q + 1 − N₁`; a lower bound `t`
//! on `t₁` yields `N₁ ≤ ⌊q + 1 − t⌋`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{BoundError, Result};
use crate::qext::{int, rat, Quad, Rational};

/// A field size `q` and a genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveParams {
    q: u64,
    g: u64,
}

impl CurveParams {
    /// Validated parameters: `q ≥ 2` a prime power and `g ≥ 1`.
    pub fn new(q: u64, g: u64) -> Result<CurveParams> {
        let p = CurveParams::unchecked(q, g)?;
        if !is_prime_power(q) {
            return Err(BoundError::InvalidParams(format!("q = {q} is not a prime power")));
        }
        Ok(p)
    }

    /// Skips the prime-power test. The formulas still make sense, the
    /// theorems do not.
    pub fn unchecked(q: u64, g: u64) -> Result<CurveParams> {
        if q < 2 {
            return Err(BoundError::InvalidParams(format!("q = {q} must be at least 2")));
        }
        if g < 1 {
            return Err(BoundError::InvalidParams("genus must be at least 1".into()));
        }
        Ok(CurveParams { q, g })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub(crate) fn qr(&self) -> Rational {
        int(self.q)
    }

    pub(crate) fn gr(&self) -> Rational {
        int(self.g)
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// Prime powers in `[lo, hi]`, ascending.
pub fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| is_prime_power(q)).collect()
}

pub fn sqrt_q(q: u64) -> Quad {
    Quad::sqrt_int(q)
}

/// `N₁ ≤ ⌊q + 1 − t⌋` for a lower bound `t` on `t₁`.
pub fn n1_from_trace(q: u64, t: &Quad) -> BigInt {
    (Quad::from(int(q + 1)) - t).floor()
}

/// Weil: `t₁ ≥ −2g√q`.
pub fn weil_t(params: &CurveParams) -> Quad {
    sqrt_q(params.q).scale(&int(-2 * params.g as i128))
}

/// Weil–Serre: `t₁ ≥ −g⌊2√q⌋`.
pub fn weil_serre_t(params: &CurveParams) -> Rational {
    let m = sqrt_q(params.q).scale(&int(2)).floor();
    Rational::from_integer(-m * BigInt::from(params.g))
}

/// A genus threshold, exactly and rounded to the integer that matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub exact: Quad,
    pub rounded: u64,
}

/// `g₂ = ⌈√q(√q − 1)/2⌉`.
pub fn g2_threshold(q: u64) -> Threshold {
    let exact = Quad::new(rat(q as i64, 2), rat(-1, 2), int(q)).expect("q >= 0");
    let rounded = exact.ceil().to_u64().expect("small threshold");
    Threshold { exact, rounded }
}

/// `g₃ = ⌊√q(q − 1)/√2⌋`, held exactly as `(q − 1)·√(q/2)`.
pub fn g3_threshold(q: u64) -> Threshold {
    let exact = Quad::new(int(0), int(q - 1), rat(q as i64, 2)).expect("q >= 0");
    let rounded = exact.floor().to_u64().expect("nonnegative threshold");
    Threshold { exact, rounded }
}

/// Does `g` lie in the Ihara range `[g₂, g₃]`?
pub fn in_ihara_range(params: &CurveParams) -> bool {
    let g = params.g;
    g2_threshold(params.q).rounded <= g && g <= g3_threshold(params.q).rounded
}

pub(crate) fn require_ihara(params: &CurveParams) -> Result<()> {
    let g2 = g2_threshold(params.q).rounded;
    if params.g < g2 {
        return Err(BoundError::BelowIharaRange { q: params.q, g: params.g, g2 });
    }
    Ok(())
}

/// `r = 1 + 8q + 4(q² − q)/g`, the radicand of Ihara's bound.
pub fn ihara_radicand(params: &CurveParams) -> Rational {
    let q = params.qr();
    int(1) + int(8) * &q + int(4) * (&q * &q - &q) / params.gr()
}

/// Ihara: `t_I = g(1 − √r)/2`, the smallest root of
/// `t²/g − t − 2qg − q² + q`. Defined for `g ≥ g₂`.
pub fn ihara_t(params: &CurveParams) -> Result<Quad> {
    require_ihara(params)?;
    let half_g = params.gr() / int(2);
    Quad::new(half_g.clone(), -half_g, ihara_radicand(params))
}

/// Which bound produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Weil,
    WeilSerre,
    Ihara,
    IharaSerre,
    BoundA2,
    Wo3,
    Wo3Serre,
    Generic,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Weil,
        Method::WeilSerre,
        Method::Ihara,
        Method::IharaSerre,
        Method::BoundA2,
        Method::Wo3,
        Method::Wo3Serre,
        Method::Generic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Weil => "weil",
            Method::WeilSerre => "weil-serre",
            Method::Ihara => "ihara",
            Method::IharaSerre => "ihara-serre",
            Method::BoundA2 => "bound-a2",
            Method::Wo3 => "wo3",
            Method::Wo3Serre => "wo3-serre",
            Method::Generic => "generic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = BoundError;
    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| BoundError::Parse(format!("unknown method {s:?}")))
    }
}

/// Lower bound on `t₁`: exact, or a certified enclosure of an algebraic
/// number of degree four (order-3 baseline).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceBound {
    Exact(Quad),
    Enclosure { lo: Rational, hi: Rational },
}

impl TraceBound {
    /// A rational or quadratic value that is `≤ t₁` for every curve.
    pub fn certified_lower(&self) -> Quad {
        match self {
            TraceBound::Exact(t) => t.clone(),
            TraceBound::Enclosure { lo, .. } => Quad::from(lo.clone()),
        }
    }

    pub fn to_exact_string(&self) -> String {
        match self {
            TraceBound::Exact(t) => t.to_exact_string(),
            TraceBound::Enclosure { lo, hi } => format!("[{lo}, {hi}]"),
        }
    }
}

/// The result of evaluating one bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub method: Method,
    pub params: CurveParams,
    pub t1_lower: TraceBound,
    pub n1_upper: BigInt,
    pub in_validity_range: bool,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn exact(method: Method, params: CurveParams, t: Quad, in_validity_range: bool) -> BoundReport {
        let n1_upper = n1_from_trace(params.q, &t);
        BoundReport { method, params, t1_lower: TraceBound::Exact(t), n1_upper, in_validity_range, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> BoundReport {
        self.notes.push(note.into());
        self
    }
}
