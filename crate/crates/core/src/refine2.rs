//! Integral refinements of Ihara's bound.
//!
//! An affine inequality `Σ a_k τ_k(ω) + a₀ > 0` with integer coefficients,
//! valid on the whole circle `|ω| = √q`, forces `Σ a_k t_k + g·a₀ ≥ g` because
//! the product of the conjugate positive values is a positive integer.
//! Combined with `t_k ≤ t₁ + q^k − q` it bounds `t₁` from below
//! ([`general_bound`]).
//!
//! At order 2 the cuts come from positive definite matrices
//! `A = [[d, a], [a, b]]` paired with the rank-one matrix
//! `[[2q + τ₂, τ₁], [τ₁, 1]]`. With `d = 1` the best choice is
//! `a = ⌊α⌋ + ½`, `b = ⌊a²⌋ + 1` where `α = −t_I/g`; see [`ihara_serre_t`].

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classical::{ihara_radicand, require_ihara, sqrt_q, CurveParams};
use crate::error::{BoundError, Result};
use crate::qext::{int, rat, Quad, Rational};
use crate::verify::check_affine_ineq;

/// How a cut was shown to be positive on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateSource {
    /// Pairing of a positive definite matrix with the rank-one trace matrix.
    PsdPairing,
    /// `τ₁ ≥ −2√q > −⌊2√q⌋ − 1`.
    WeilSerre,
    /// Exact Sturm-sequence check on `[−2√q, 2√q]`.
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutCertificate {
    pub q: u64,
    pub source: CertificateSource,
}

/// Integer coefficients `a₀, a₁, …, a_n` of `Σ a_k τ_k + a₀ > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCut {
    coeffs: Vec<BigInt>,
    certificate: Option<CutCertificate>,
}

impl AffineCut {
    /// Requires `a_k ≥ 0` for `k ≥ 1` and `Σ_{k≥1} a_k ≥ 1`. The result is
    /// uncertified.
    pub fn new(coeffs: Vec<BigInt>) -> Result<AffineCut> {
        if coeffs.len() < 2 {
            return Err(BoundError::InvalidCut("order must be at least 1".into()));
        }
        if let Some(k) = coeffs.iter().skip(1).position(|a| a.is_negative()) {
            return Err(BoundError::InvalidCut(format!("a_{} is negative", k + 1)));
        }
        let total: BigInt = coeffs.iter().skip(1).sum();
        if total.is_zero() {
            return Err(BoundError::InvalidCut("coefficients a_1..a_n sum to zero".into()));
        }
        Ok(AffineCut { coeffs, certificate: None })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<AffineCut> {
        AffineCut::new(coeffs.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Checks positivity on the circle for field size `q`.
    pub fn certify(mut self, q: u64) -> Result<AffineCut> {
        let check = check_affine_ineq(q, &self.coeffs)?;
        if !check.holds {
            return Err(BoundError::UncertifiedCut { q });
        }
        self.certificate = Some(CutCertificate { q, source: CertificateSource::Oracle });
        Ok(self)
    }

    /// The cut of a positive definite `A`: `dτ₂ + 2aτ₁ + 2qd + b > 0`.
    pub fn from_matrix2(q: u64, m: &RefineMatrix2) -> AffineCut {
        let a0 = BigInt::from(2 * q) * m.d + m.b;
        AffineCut {
            coeffs: vec![a0, BigInt::from(m.two_a), BigInt::from(m.d)],
            certificate: Some(CutCertificate { q, source: CertificateSource::PsdPairing }),
        }
    }

    /// `τ₁ + ⌊2√q⌋ + 1 > 0`.
    pub fn weil_serre(q: u64) -> AffineCut {
        let m = sqrt_q(q).scale(&int(2)).floor();
        AffineCut {
            coeffs: vec![m + 1, BigInt::one()],
            certificate: Some(CutCertificate { q, source: CertificateSource::WeilSerre }),
        }
    }

    pub(crate) fn with_certificate(coeffs: Vec<BigInt>, certificate: CutCertificate) -> AffineCut {
        AffineCut { coeffs, certificate: Some(certificate) }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn certificate(&self) -> Option<&CutCertificate> {
        self.certificate.as_ref()
    }
}

/// `t₁ ≥ (g(1 − a₀) − Σ a_k(q^k − q)) / Σ a_k`.
pub fn general_bound(params: &CurveParams, cut: &AffineCut) -> Result<Rational> {
    match cut.certificate {
        Some(c) if c.q == params.q() => {}
        _ => return Err(BoundError::UncertifiedCut { q: params.q() }),
    }
    let q = BigInt::from(params.q());
    let g = BigInt::from(params.g());
    let mut numer = &g * (BigInt::one() - &cut.coeffs[0]);
    let mut denom = BigInt::zero();
    let mut qk = q.clone();
    for a in &cut.coeffs[1..] {
        numer -= a * (&qk - &q);
        denom += a;
        qk *= &q;
    }
    Ok(Rational::new(numer, denom))
}

/// `A = [[d, a], [a, b]]` with `d, 2a, b` natural and `A` positive definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefineMatrix2 {
    d: u64,
    two_a: u64,
    b: u64,
}

impl RefineMatrix2 {
    pub fn new(d: u64, two_a: u64, b: u64) -> Result<RefineMatrix2> {
        // 4(db − a²) > 0
        let det4 = BigInt::from(4) * BigInt::from(d) * BigInt::from(b) - BigInt::from(two_a).pow(2);
        if d == 0 || !det4.is_positive() {
            return Err(BoundError::NotPositiveDefinite);
        }
        Ok(RefineMatrix2 { d, two_a, b })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn two_a(&self) -> u64 {
        self.two_a
    }

    pub fn a(&self) -> Rational {
        rat(self.two_a as i64, 2)
    }

    pub fn b(&self) -> u64 {
        self.b
    }
}

/// `t₁ ≥ (g(1 − 2qd − b) − d(q² − q)) / (d + 2a)`.
pub fn bound_a2(params: &CurveParams, m: &RefineMatrix2) -> Rational {
    let q = BigInt::from(params.q());
    let g = BigInt::from(params.g());
    let d = BigInt::from(m.d);
    let numer = &g * (BigInt::one() - BigInt::from(2) * &q * &d - m.b) - &d * (&q * &q - &q);
    Rational::new(numer, d + m.two_a)
}

/// `α = −t_I/g = (√r − 1)/2`.
pub fn alpha(params: &CurveParams) -> Result<Quad> {
    require_ihara(params)?;
    let a = Quad::new(rat(-1, 2), rat(1, 2), ihara_radicand(params))?;
    debug_assert!({
        let q = params.qr();
        &a * (&a + Quad::from_int(1)) == Quad::from(int(2) * &q + (&q * &q - &q) / params.gr())
    });
    Ok(a)
}

fn floor_ceil(a: &Quad) -> (BigInt, BigInt) {
    let f = a.floor();
    let c = if a.is_integer() { f.clone() } else { &f + 1 };
    (f, c)
}

/// `g(α − ⌊α⌋)(⌈α⌉ − α) / (2⌈α⌉)` for any positive `α`.
fn fractional_gain(g: &Rational, a: &Quad) -> Quad {
    let (f, c) = floor_ceil(a);
    if f == c {
        return Quad::from_int(0);
    }
    let lo = a - &Quad::from(f);
    let hi = Quad::from(c.clone()) - a;
    (lo * hi).scale(&(g / int(BigInt::from(2) * c)))
}

/// The optimal matrix with top-left entry 1:
/// `[[1, k + ½], [k + ½, k(k + 1) + 1]]` with `k = ⌊α⌋`.
pub fn ihara_serre_matrix(params: &CurveParams) -> Result<RefineMatrix2> {
    let k = alpha(params)?.floor().to_u64().expect("alpha fits in u64");
    RefineMatrix2::new(1, 2 * k + 1, k * (k + 1) + 1)
}

/// `t_IS = −(g·k(k+1) + 2qg + q² − q) / (2(k + 1))` with `k = ⌊α⌋`.
pub fn ihara_serre_t(params: &CurveParams) -> Result<Rational> {
    let k = alpha(params)?.floor();
    let q = BigInt::from(params.q());
    let g = BigInt::from(params.g());
    let numer = &g * &k * (&k + 1) + BigInt::from(2) * &q * &g + &q * &q - &q;
    Ok(-Rational::new(numer, BigInt::from(2) * (k + 1)))
}

/// `t_IS − t_I = g(α − ⌊α⌋)(⌈α⌉ − α) / (2⌈α⌉)`.
pub fn gain(params: &CurveParams) -> Result<Quad> {
    let a = alpha(params)?;
    Ok(fractional_gain(&params.gr(), &a))
}

/// Does the refined bound lower the integer bound on `N₁`?
pub fn improves_n1(params: &CurveParams) -> Result<bool> {
    let ti = crate::classical::ihara_t(params)?;
    let tis = Quad::from(ihara_serre_t(params)?);
    let q = params.q();
    Ok(crate::classical::n1_from_trace(q, &tis) < crate::classical::n1_from_trace(q, &ti))
}

/// Large-genus behaviour of the gain for fixed `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Asymptotics {
    /// `α^∞ = (√(1 + 8q) − 1)/2`.
    pub alpha_inf: Quad,
    /// `α^∞ − slope`, the improved upper bound on `A(q)`.
    pub aq_upper: Quad,
    /// Limit of `gain/g`.
    pub slope: Quad,
    /// Constant term of the asymptote of the gain.
    pub const_term: Quad,
}

pub fn asymptotics(q: u64) -> Asymptotics {
    let radicand = int(1 + 8 * q);
    let alpha_inf = Quad::new(rat(-1, 2), rat(1, 2), radicand.clone()).expect("positive radicand");
    let slope = fractional_gain(&int(1), &alpha_inf);
    let aq_upper = &alpha_inf - &slope;
    let k = alpha_inf.floor();
    let q_r = int(q);
    // (⌊α^∞⌋ − α^∞ + ½)(q² − q) / ((⌊α^∞⌋ + 1)·√(8q + 1))
    let inv_sqrt = Quad::sqrt(radicand.clone()).expect("positive radicand").scale(&(int(1) / &radicand));
    let const_term =
        (Quad::from(int(k.clone()) + rat(1, 2)) - &alpha_inf).scale(&((&q_r * &q_r - &q_r) / int(k + 1))) * inv_sqrt;
    Asymptotics { alpha_inf, aq_upper, slope, const_term }
}

/// Gain at `g = 4q`, where `α = (3√q − 1)/2`:
/// `(2q/⌈α⌉)(α − ⌊α⌋)(⌈α⌉ − α)`.
pub fn seq_gain_4q(q: u64) -> Result<Quad> {
    if q < 34 {
        return Err(BoundError::OutOfIharaRange { q });
    }
    let a = Quad::new(rat(-1, 2), rat(3, 2), int(q))?;
    let (f, c) = floor_ceil(&a);
    if f == c {
        return Ok(Quad::from_int(0));
    }
    let lo = &a - &Quad::from(f);
    let hi = Quad::from(c.clone()) - &a;
    Ok((lo * hi).scale(&(int(2 * q) / int(c))))
}

/// `q / (2⌈(3√q − 1)/2⌉)`, the largest possible gain at `g = 4q`.
pub fn seq_gain_cap(q: u64) -> Rational {
    let a = Quad::new(rat(-1, 2), rat(3, 2), int(q)).expect("positive radicand");
    int(q) / int(BigInt::from(2) * a.ceil())
}
