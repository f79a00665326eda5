//! Independent oracles for the exact modules.
//!
//! The numeric ones run on [`hp::Hp`], a 400-bit fixed-point type. The
//! positivity check of affine cuts also decides its answer exactly with
//! Sturm sequences evaluated at the irrational endpoints `±2√q`.

pub mod hp;
pub mod poly;
pub mod suite;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classical::{require_ihara, CurveParams};
use crate::error::{BoundError, Result};
use crate::qext::{int, rat, Quad, Rational};
use crate::refine2::{bound_a2, RefineMatrix2};
use hp::Hp;
use poly::Poly;

/// Largest cut order accepted by [`check_affine_ineq`].
pub const MAX_CUT_ORDER: usize = 8;

/// Values within this distance of zero count as neither positive nor
/// negative.
pub fn positivity_margin() -> Hp {
    Hp::pow10(-30)
}

/// `τ₀ … τ_n` as polynomials in `u = τ₁`, from
/// `τ_{k+1} = u·τ_k − q·τ_{k−1}` with `τ₀ = 2`.
pub fn tau_polynomials(q: u64, n: usize) -> Vec<Poly> {
    let mut out = vec![Poly::constant(int(2)), Poly::x()];
    while out.len() <= n {
        let k = out.len();
        let next = Poly::x().mul(&out[k - 1]).add(&out[k - 2].scale(&int(-(q as i64))));
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// `a₀ + Σ a_k τ_k(u)`.
pub fn cut_polynomial(q: u64, coeffs: &[BigInt]) -> Poly {
    let taus = tau_polynomials(q, coeffs.len().saturating_sub(1));
    let mut p = Poly::constant(Rational::from_integer(coeffs.first().cloned().unwrap_or_default()));
    for (a, tau) in coeffs.iter().zip(&taus).skip(1) {
        p = p.add(&tau.scale(&Rational::from_integer(a.clone())));
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    Holds,
    Boundary,
    Fails,
}

#[derive(Clone, Debug)]
pub struct AffineCheck {
    pub status: Positivity,
    /// `status == Holds`.
    pub holds: bool,
    /// Exact verdict: the cut polynomial has no zero on `[−2√q, 2√q]` and
    /// is positive there.
    pub exactly_positive: bool,
    pub min_value: Hp,
    pub argmin: Hp,
}

/// Decides whether `Σ a_k τ_k(ω) + a₀ > 0` for every `|ω| = √q`.
///
/// `coeffs` is `a₀, a₁, …, a_n`. The circle maps onto `u ∈ [−2√q, 2√q]`
/// through `u = ω + ω̄`.
pub fn check_affine_ineq(q: u64, coeffs: &[BigInt]) -> Result<AffineCheck> {
    let order = coeffs.len().saturating_sub(1);
    if order > MAX_CUT_ORDER {
        return Err(BoundError::DegreeTooHigh { degree: order });
    }
    let p = cut_polynomial(q, coeffs);
    let edge = Quad::sqrt_int(q).scale(&int(2));
    let left = -&edge;

    let p_left = p.eval_quad(&left);
    let p_right = p.eval_quad(&edge);
    let exactly_positive = p_left.signum() > 0
        && p_right.signum() > 0
        && (p.degree().unwrap_or(0) == 0 || poly::count_roots_quad(&p.sturm_sequence(), &left, &edge) == 0);

    let mut min_value = Hp::from_quad(&p_left);
    let mut argmin = Hp::from_quad(&left);
    let right_value = Hp::from_quad(&p_right);
    if right_value < min_value {
        min_value = right_value;
        argmin = Hp::from_quad(&edge);
    }

    let dp = p.derivative();
    if dp.degree().unwrap_or(0) >= 1 {
        // bracket strictly outside the domain
        let mut bound = int(edge.floor() + 1);
        while dp.eval(&bound).is_zero() || dp.eval(&-&bound).is_zero() {
            bound += int(1);
        }
        let sf = dp.squarefree();
        let width = Rational::new(BigInt::from(1), BigInt::from(1) << 220);
        let four_q = int(4 * q);
        for (lo, hi) in poly::isolate_roots(&dp, &-&bound, &bound) {
            let (lo, hi) = poly::refine_root(&sf, lo, hi, &width);
            let mid = (lo + hi) / int(2);
            if &mid * &mid > four_q {
                continue;
            }
            let u = Hp::from_rational(&mid);
            let v = p.eval_hp(&u);
            if v < min_value {
                min_value = v;
                argmin = u;
            }
        }
    }

    let margin = positivity_margin();
    let status = match (exactly_positive, min_value > margin, min_value < -&margin) {
        (true, true, _) => Positivity::Holds,
        (false, _, true) => Positivity::Fails,
        _ => Positivity::Boundary,
    };
    Ok(AffineCheck { status, holds: status == Positivity::Holds, exactly_positive, min_value, argmin })
}

/// Minimum of `t₁` over the order-2 Weil domain, by case analysis on the
/// geometry: the corner `(−2g√q, 2qg)` if it satisfies
/// `t₂ ≤ t₁ + q² − q`, otherwise the left intersection of that line with the
/// parabola `t₂ = t₁²/g − 2qg`.
pub fn weil_domain_min2(params: &CurveParams) -> Hp {
    let q = Hp::from_int(params.q());
    let g = Hp::from_int(params.g());
    let two = Hp::from_int(2);
    let corner_t1 = -(&two * &g * q.sqrt());
    let corner_t2 = &two * &q * &g;
    let line_at_corner = &corner_t1 + &q * &q - &q;
    if corner_t2 <= line_at_corner {
        return corner_t1;
    }
    // t²/g − t − (2qg + q² − q) = 0
    let a = Hp::one() / &g;
    let c = -(&two * &q * &g + &q * &q - &q);
    let disc = Hp::one() - Hp::from_int(4) * &a * &c;
    (Hp::one() - disc.sqrt()) / (&two * &a)
}

/// A point `(t₁, …, t_n)` of trace space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilDomainPoint {
    pub t: Vec<Rational>,
}

impl WeilDomainPoint {
    pub fn new(t: Vec<Rational>) -> WeilDomainPoint {
        WeilDomainPoint { t }
    }

    /// Order-2 membership: `t₂ ≤ 2qg`, `t₂ ≥ t₁²/g − 2qg`,
    /// `t₂ ≤ t₁ + q² − q`.
    pub fn in_order2_domain(&self, params: &CurveParams) -> bool {
        let (Some(t1), Some(t2)) = (self.t.first(), self.t.get(1)) else {
            return false;
        };
        let q = int(params.q());
        let g = int(params.g());
        let two_qg = int(2) * &q * &g;
        t2 <= &two_qg && t2 >= &(t1 * t1 / &g - &two_qg) && t2 <= &(t1 + &q * &q - &q)
    }
}

/// Traces `t_k = Σ_j 2q^{k/2} cos(kθ_j)` of a multiset of angles, for
/// `k = 1..=n`, rounded to exact dyadic rationals.
pub fn traces_from_angles(q: u64, angles: &[Hp], n: usize) -> WeilDomainPoint {
    let s = Hp::from_int(q).sqrt();
    let t = (1..=n)
        .map(|k| {
            let scale = Hp::from_int(2) * s.powi(k as u32);
            let sum = angles.iter().fold(Hp::zero(), |acc, th| acc + (Hp::from_int(k as u64) * th).cos());
            (scale * sum).to_rational()
        })
        .collect();
    WeilDomainPoint { t }
}

fn psd2(a: &Hp, b: &Hp, c: &Hp, margin: &Hp) -> bool {
    let neg = -margin;
    a >= &neg && c >= &neg && (a * c - b * b) >= neg
}

/// Are both `2×2` blocks of the order-3 Gram matrix PSD at `(t₁, t₂, t₃)`?
pub fn psd4_feasible_point(params: &CurveParams, point: &WeilDomainPoint) -> bool {
    let [t1, t2, t3] = match point.t.as_slice() {
        [a, b, c] => [a, b, c].map(Hp::from_rational),
        _ => return false,
    };
    let s = Hp::from_int(params.q()).sqrt();
    let two_g = Hp::from_int(2 * params.g());
    let q = Hp::from_int(params.q());
    let off = &s * &t1 + &t2;
    let big = &two_g * &q * &s;
    let small = &two_g * &s;
    let margin = positivity_margin();
    psd2(&(&big + &t3), &off, &(&small + &t1), &margin) && psd2(&(&small - &t1), &off, &(&big - &t3), &margin)
}

/// Brute-force argmax of `bound_A2(1, a, ⌊a²⌋ + 1)` over
/// `a ∈ {½, 1, …, two_a_max/2}`, returned as `2a`. Ties go to the smallest.
pub fn scan_halfinteger(params: &CurveParams, two_a_max: u64) -> Result<u64> {
    require_ihara(params)?;
    let mut best: Option<(Rational, u64)> = None;
    for two_a in 1..=two_a_max {
        let a2 = rat((two_a * two_a) as i64, 4);
        let b: BigInt = a2.floor().to_integer() + 1;
        let m = RefineMatrix2::new(1, two_a, b.try_into().expect("small b"))?;
        let v = bound_a2(params, &m);
        if best.as_ref().is_none_or(|(bv, _)| &v > bv) {
            best = Some((v, two_a));
        }
    }
    best.map(|(_, a)| a).ok_or(BoundError::EmptySearch)
}

/// Sign of a high-precision value after applying the positivity margin.
pub fn hp_sign(v: &Hp) -> i8 {
    let m = positivity_margin();
    if v > &m {
        1
    } else if v < &-&m {
        -1
    } else {
        0
    }
}
