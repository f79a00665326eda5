//! Order-3 bounds.
//!
//! The baseline `t_W` is the smallest `t₁` on the line
//! `t₂ = t₁ + q² − q`, `t₃ = t₁ + q³ − q` where the first Gram block
//! `M = [[2gq√q + t₃, √q·t₁ + t₂], [√q·t₁ + t₂, 2g√q + t₁]]` is singular.
//! `det M` restricted to the line is a quadratic in `t₁` over `Q(√q)`, so its
//! root is enclosed by exact-sign bisection on dyadic rationals.
//!
//! The refinement pairs a PSD matrix `A = [[d, a], [a, b]]` with the rank-one
//! matrix `[[2q√q + τ₃, √q·τ₁ + τ₂], [√q·τ₁ + τ₂, 2√q + τ₁]]`, whose
//! determinant vanishes on the circle. When `d`, `2a` and `2a√q + b` are
//! natural integers the resulting cut has integer coefficients.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classical::{g3_threshold, sqrt_q, BoundReport, CurveParams, Method, TraceBound};
use crate::error::{BoundError, Result};
use crate::qext::{int, rat, rational_floor, Quad, Rational};
use crate::refine2::{AffineCut, CertificateSource, CutCertificate};
use crate::verify::hp::Hp;

pub const DEFAULT_PRECISION_BITS: u32 = 60;
/// Finest width tried when the `N₁` enclosure straddles an integer.
pub const MAX_PRECISION_BITS: u32 = 512;

pub fn precision_from_bits(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

/// `A = [[d, a], [a, b]]` with `b = b_x + b_y√q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefineMatrix3 {
    q: u64,
    d: u64,
    two_a: u64,
    b_x: BigInt,
    b_y: BigInt,
    b: Quad,
    certificate: BigInt,
}

impl RefineMatrix3 {
    /// Checks that `2a√q + b` is a natural integer and that `A` is PSD.
    pub fn new(q: u64, d: u64, two_a: u64, b_x: impl Into<BigInt>, b_y: impl Into<BigInt>) -> Result<RefineMatrix3> {
        let (b_x, b_y) = (b_x.into(), b_y.into());
        let s = sqrt_q(q);
        let b = Quad::from(int(b_x.clone())) + s.scale(&int(b_y.clone()));
        let c = s.scale(&int(two_a)) + &b;
        let certificate = match c.as_rational() {
            Some(r) if r.is_integer() && !r.is_negative() => r.to_integer(),
            _ => {
                return Err(BoundError::IntegralityViolation(format!("2a*sqrt(q) + b = {c} is not a natural integer")))
            }
        };
        let a = rat(two_a as i64, 2);
        let det = b.scale(&int(d)) - Quad::from(&a * &a);
        if det.signum() < 0 || b.signum() < 0 {
            return Err(BoundError::NotPsd);
        }
        if d == 0 && two_a == 0 && certificate.is_zero() {
            return Err(BoundError::InvalidParams("A is the zero matrix".into()));
        }
        Ok(RefineMatrix3 { q, d, two_a, b_x, b_y, b, certificate })
    }

    /// The smallest natural `b_x` with `b_y = −2a` that makes `A` PSD:
    /// `b_x = ⌈a²/d + 2a√q⌉`.
    pub fn with_min_b(q: u64, d: u64, two_a: u64) -> Result<RefineMatrix3> {
        if d == 0 {
            return Err(BoundError::NotPsd);
        }
        let a2_over_d = rat((two_a * two_a) as i64, 4 * d as i64);
        let b_x = (Quad::from(a2_over_d) + sqrt_q(q).scale(&int(two_a))).ceil();
        RefineMatrix3::new(q, d, two_a, b_x, -BigInt::from(two_a))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn two_a(&self) -> u64 {
        self.two_a
    }

    pub fn b_x(&self) -> &BigInt {
        &self.b_x
    }

    pub fn b_y(&self) -> &BigInt {
        &self.b_y
    }

    pub fn b(&self) -> &Quad {
        &self.b
    }

    /// The natural integer `2a√q + b`.
    pub fn certificate(&self) -> &BigInt {
        &self.certificate
    }

    /// `2q√q·d + 2b√q`, the constant of the pairing.
    pub fn pairing_constant(&self) -> Quad {
        let q = int(self.q);
        Quad::from(int(BigInt::from(2) * &self.b_y) * &q)
            + sqrt_q(self.q).scale(&(int(2 * self.d) * &q + int(BigInt::from(2) * &self.b_x)))
    }

    /// `d + 2a + (2a√q + b)`.
    pub fn denominator(&self) -> BigInt {
        BigInt::from(self.d) + self.two_a + &self.certificate
    }

    /// The integer cut `dτ₃ + 2aτ₂ + cτ₁ + ⌊2q√q·d + 2b√q⌋ + 1 > 0`.
    pub fn cut(&self) -> AffineCut {
        let f = self.pairing_constant().floor();
        AffineCut::with_certificate(
            vec![f + 1, self.certificate.clone(), BigInt::from(self.two_a), BigInt::from(self.d)],
            CutCertificate { q: self.q, source: CertificateSource::PsdPairing },
        )
    }
}

/// `t₁ ≥ (−g⌊2q√q·d + 2b√q⌋ − d(q³ − q) − 2a(q² − q)) / (d + 2a + 2a√q + b)`.
pub fn bound_a3(params: &CurveParams, m: &RefineMatrix3) -> Result<Rational> {
    if m.q != params.q() {
        return Err(BoundError::InvalidParams(format!("matrix built for q = {}, not {}", m.q, params.q())));
    }
    let q = BigInt::from(params.q());
    let q2 = &q * &q - &q;
    let q3 = &q * &q * &q - &q;
    let numer =
        -BigInt::from(params.g()) * m.pairing_constant().floor() - BigInt::from(m.d) * q3 - BigInt::from(m.two_a) * q2;
    Ok(Rational::new(numer, m.denominator()))
}

/// `det M` on the line as `c₂t² + c₁t + c₀`.
#[derive(Clone, Debug)]
struct LineDet {
    c2: Quad,
    c1: Quad,
    c0: Quad,
}

impl LineDet {
    fn new(params: &CurveParams) -> LineDet {
        let q = int(params.q());
        let g = int(params.g());
        let s = sqrt_q(params.q());
        let q2 = &q * &q - &q;
        let q3 = &q * &q * &q - &q;
        let two_gs = s.scale(&(int(2) * &g));
        let c2 = Quad::from(-&q) - s.scale(&int(2));
        let c1 =
            two_gs.scale(&(int(1) + &q)) + Quad::from(q3.clone()) - (&s + Quad::from_int(1)).scale(&(int(2) * &q2));
        let c0 = Quad::from(int(4) * &g * &g * &q * &q - &q2 * &q2) + two_gs.scale(&q3);
        LineDet { c2, c1, c0 }
    }

    fn eval(&self, t: &Rational) -> Quad {
        self.c2.scale(&(t * t)) + self.c1.scale(t) + &self.c0
    }

    fn discriminant(&self) -> Quad {
        &self.c1 * &self.c1 - (&self.c2 * &self.c0).scale(&int(4))
    }

    fn vertex(&self) -> Quad {
        (-&self.c1).checked_div(&self.c2.scale(&int(2))).expect("leading coefficient is nonzero")
    }
}

/// An interval holding the baseline trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Rational,
    pub hi: Rational,
    pub width_bound: Rational,
}

impl RootEnclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// `[⌊q + 1 − hi⌋, ⌊q + 1 − lo⌋]`.
    pub fn n1_range(&self, q: u64) -> (BigInt, BigInt) {
        let top = int(q + 1);
        (rational_floor(&(&top - &self.hi)), rational_floor(&(&top - &self.lo)))
    }
}

/// Smallest root of `det M` on the line, to width `precision`.
pub fn wo3_t(params: &CurveParams, precision: &Rational) -> Result<RootEnclosure> {
    if !precision.is_positive() {
        return Err(BoundError::InvalidParams("precision must be positive".into()));
    }
    let det = LineDet::new(params);
    let disc = det.discriminant();
    if disc.signum() < 0 {
        return Err(BoundError::NoRealRoot { q: params.q(), g: params.g() });
    }
    let vertex = det.vertex();
    if disc.is_zero() {
        return Ok(bracket(&vertex, precision));
    }
    // det > 0 strictly between the roots; approach the vertex from dyadics
    let mut hi = None;
    for k in 0..=2 * MAX_PRECISION_BITS {
        let scale = int(BigInt::one() << k);
        let cand = int(vertex.scale(&scale).floor()) / &scale;
        if det.eval(&cand).signum() > 0 {
            hi = Some(cand);
            break;
        }
    }
    let mut hi = hi.ok_or(BoundError::NoRealRoot { q: params.q(), g: params.g() })?;
    let weil = sqrt_q(params.q()).scale(&int(-2 * params.g() as i64)).floor();
    let mut lo = int(weil - 1);
    let mut step = int(1);
    while lo >= hi || det.eval(&lo).signum() >= 0 {
        if lo < hi && det.eval(&lo).is_zero() {
            return Ok(RootEnclosure { hi: lo.clone(), lo, width_bound: precision.clone() });
        }
        lo = lo.min(hi.clone()) - &step;
        step *= int(2);
    }
    let two = int(2);
    while &hi - &lo > *precision {
        let mid = (&lo + &hi) / &two;
        match det.eval(&mid).signum() {
            0 => return Ok(RootEnclosure { lo: mid.clone(), hi: mid, width_bound: precision.clone() }),
            s if s < 0 => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RootEnclosure { lo, hi, width_bound: precision.clone() })
}

fn bracket(v: &Quad, precision: &Rational) -> RootEnclosure {
    if let Some(r) = v.as_rational() {
        return RootEnclosure { lo: r.clone(), hi: r.clone(), width_bound: precision.clone() };
    }
    let mut k = 0u32;
    loop {
        let scale = int(BigInt::one() << k);
        let lo = int(v.scale(&scale).floor()) / &scale;
        let hi = &lo + Rational::one() / &scale;
        if &hi - &lo <= *precision {
            return RootEnclosure { lo, hi, width_bound: precision.clone() };
        }
        k += 1;
    }
}

/// Is the second block `[[2g√q − t₁, √q·t₁ + t₂], [√q·t₁ + t₂, 2gq√q − t₃]]`
/// PSD on the line at `t`?
pub fn second_block_psd(params: &CurveParams, t: &Rational) -> bool {
    let q = int(params.q());
    let g = int(params.g());
    let s = sqrt_q(params.q());
    let t2 = t + &q * &q - &q;
    let t3 = t + &q * &q * &q - &q;
    let m11 = s.scale(&(int(2) * &g)) - Quad::from(t.clone());
    let m12 = s.scale(t) + Quad::from(t2);
    let m22 = s.scale(&(int(2) * &g * &q)) - Quad::from(t3);
    let det = &m11 * &m22 - &m12 * &m12;
    m11.signum() >= 0 && m22.signum() >= 0 && det.signum() >= 0
}

/// The baseline as a report, refining until the `N₁` bound is unambiguous.
pub fn wo3_report(params: &CurveParams, precision_bits: u32) -> Result<BoundReport> {
    let mut bits = precision_bits.max(1);
    let mut enc = wo3_t(params, &precision_from_bits(bits))?;
    loop {
        let (lo_n, hi_n) = enc.n1_range(params.q());
        if lo_n == hi_n || bits >= MAX_PRECISION_BITS {
            break;
        }
        bits = (bits * 2).min(MAX_PRECISION_BITS);
        enc = wo3_t(params, &precision_from_bits(bits))?;
    }
    let n1_upper = rational_floor(&(int(params.q() + 1) - &enc.lo));
    let mut notes = Vec::new();
    if !second_block_psd(params, &enc.lo) {
        notes.push("second block not PSD at the baseline point".to_string());
    }
    let (lo_n, hi_n) = enc.n1_range(params.q());
    if lo_n != hi_n {
        notes.push(format!("N1 enclosure [{lo_n}, {hi_n}] unresolved at 2^-{bits}"));
    }
    Ok(BoundReport {
        method: Method::Wo3,
        params: *params,
        t1_lower: TraceBound::Enclosure { lo: enc.lo, hi: enc.hi },
        n1_upper,
        in_validity_range: params.g() >= g3_threshold(params.q()).rounded,
        notes,
    })
}

/// Limits on the matrix search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Scalings per unit of `d`.
    pub scale_grid: u64,
    pub d_max: u64,
    /// Half-width of the window of `2a` values around the rounded target.
    pub neighborhood: u64,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget { scale_grid: 32, d_max: 4, neighborhood: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub matrix: RefineMatrix3,
    pub t1_lower: Rational,
    pub candidates: usize,
}

/// Rounds multiples of the kernel matrix `[[1, ρ], [ρ, ρ²]]` of `M(t_W)`.
pub fn search_a3(params: &CurveParams, budget: &SearchBudget) -> Result<SearchResult> {
    if budget.scale_grid == 0 || budget.d_max == 0 || budget.neighborhood == 0 {
        return Err(BoundError::InvalidParams("search budget fields must be at least 1".into()));
    }
    let enc = wo3_t(params, &precision_from_bits(DEFAULT_PRECISION_BITS))?;
    let q = params.q();
    let t = Hp::from_rational(&enc.lo);
    let s = Hp::from_int(q).sqrt();
    let m12 = (&s + Hp::one()) * &t + Hp::from_int(q * q - q);
    let m22 = &t + &(Hp::from_int(2 * params.g()) * &s);
    if m22.abs() < Hp::pow10(-30) {
        return Err(BoundError::EmptySearch);
    }
    let rho = -(m12 / m22);

    let mut pairs = BTreeSet::new();
    let grid = budget.scale_grid;
    for m in grid..=budget.d_max * grid {
        let d = (2 * m + grid) / (2 * grid);
        if d == 0 || d > budget.d_max {
            continue;
        }
        let lambda = Hp::from_rational(&rat(m as i64, grid as i64));
        let target = Hp::from_int(2) * lambda * &rho;
        let center = (target + Hp::from_rational(&rat(1, 2))).floor();
        let nb = BigInt::from(budget.neighborhood);
        let mut two_a = &center - &nb;
        while two_a <= &center + &nb {
            if let Some(v) = two_a.to_u64() {
                pairs.insert((d, v));
            }
            two_a += 1;
        }
    }

    let mut best: Option<(Rational, RefineMatrix3)> = None;
    let mut candidates = 0;
    for (d, two_a) in pairs {
        let Ok(m) = RefineMatrix3::with_min_b(q, d, two_a) else { continue };
        candidates += 1;
        let v = bound_a3(params, &m)?;
        if best.as_ref().is_none_or(|(bv, _)| &v > bv) {
            best = Some((v, m));
        }
    }
    let (t1_lower, matrix) = best.ok_or(BoundError::EmptySearch)?;
    Ok(SearchResult { matrix, t1_lower, candidates })
}

/// The searched refinement as a report.
pub fn wo3_serre_report(params: &CurveParams, budget: &SearchBudget) -> Result<BoundReport> {
    let found = search_a3(params, budget)?;
    let m = &found.matrix;
    Ok(BoundReport::exact(Method::Wo3Serre, *params, Quad::from(found.t1_lower.clone()), true).with_note(format!(
        "d={} 2a={} b_x={} b_y={}",
        m.d(),
        m.two_a(),
        m.b_x(),
        m.b_y()
    )))
}

/// The four record matrices `(q, g, d, 2a, b_x, b_y)`.
pub const REC3_MATRICES: [(u64, u64, u64, u64, i64, i64); 4] =
    [(5, 19, 1, 7, 28, -7), (7, 21, 3, 29, 147, -29), (8, 36, 3, 30, 160, -30), (11, 35, 2, 28, 191, -28)];

pub fn rec3_rows() -> Vec<(CurveParams, RefineMatrix3, Rational)> {
    REC3_MATRICES
        .iter()
        .map(|&(q, g, d, two_a, b_x, b_y)| {
            let params = CurveParams::new(q, g).expect("record parameters are valid");
            let m = RefineMatrix3::new(q, d, two_a, b_x, b_y).expect("record matrices are certified");
            let t = bound_a3(&params, &m).expect("matrix matches q");
            (params, m, t)
        })
        .collect()
}

pub fn rec3_table() -> Vec<BoundReport> {
    rec3_rows()
        .into_iter()
        .map(|(params, m, t)| {
            BoundReport::exact(Method::Wo3Serre, params, Quad::from(t), true).with_note(format!(
                "d={} 2a={} b_x={} b_y={}",
                m.d(),
                m.two_a(),
                m.b_x(),
                m.b_y()
            ))
        })
        .collect()
}
