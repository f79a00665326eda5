//! One entry point per method, and the best of them.

use num_bigint::BigInt;

use crate::classical::{
    g2_threshold, g3_threshold, ihara_t, in_ihara_range, weil_serre_t, weil_t, BoundReport, CurveParams, Method,
};
use crate::error::{BoundError, Result};
use crate::order3::{wo3_report, wo3_serre_report, SearchBudget, DEFAULT_PRECISION_BITS};
use crate::qext::Quad;
use crate::refine2::{gain, ihara_serre_t};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub precision_bits: u32,
    pub budget: SearchBudget,
}

impl Default for EvalOptions {
    fn default() -> EvalOptions {
        EvalOptions { precision_bits: DEFAULT_PRECISION_BITS, budget: SearchBudget::default() }
    }
}

/// The methods `best` considers, in tie-break order.
pub const BEST_CANDIDATES: [Method; 6] =
    [Method::Weil, Method::WeilSerre, Method::Ihara, Method::IharaSerre, Method::Wo3, Method::Wo3Serre];

fn below_g2(params: &CurveParams) -> bool {
    Quad::from_int(params.g() as i64)
        .checked_cmp(&g2_threshold(params.q()).exact)
        .expect("rational against Q(sqrt q)")
        .is_le()
}

pub fn evaluate(params: &CurveParams, method: Method, opts: &EvalOptions) -> Result<BoundReport> {
    match method {
        Method::Weil => Ok(BoundReport::exact(method, *params, weil_t(params), below_g2(params))),
        Method::WeilSerre => {
            Ok(BoundReport::exact(method, *params, Quad::from(weil_serre_t(params)), below_g2(params)))
        }
        Method::Ihara => Ok(BoundReport::exact(method, *params, ihara_t(params)?, in_ihara_range(params))),
        Method::IharaSerre => {
            let t = Quad::from(ihara_serre_t(params)?);
            let report = BoundReport::exact(method, *params, t, in_ihara_range(params));
            if gain(params)?.is_zero() {
                Ok(report.with_note("alpha integral; coincides with Ihara"))
            } else {
                Ok(report)
            }
        }
        Method::Wo3 => wo3_report(params, opts.precision_bits),
        Method::Wo3Serre => wo3_serre_report(params, &opts.budget),
        Method::BoundA2 | Method::Generic => {
            Err(BoundError::InvalidParams(format!("method {method} needs an explicit matrix or cut")))
        }
    }
}

/// Smallest `N₁` bound over [`BEST_CANDIDATES`]. Methods that do not apply
/// are skipped; the baseline order-3 bound counts only for `g ≥ ⌊g₃⌋`.
pub fn best(params: &CurveParams, opts: &EvalOptions) -> Result<BoundReport> {
    let g3 = g3_threshold(params.q()).rounded;
    let mut winner: Option<BoundReport> = None;
    let mut skipped = Vec::new();
    for method in BEST_CANDIDATES {
        if method == Method::Wo3 && params.g() < g3 {
            continue;
        }
        match evaluate(params, method, opts) {
            Ok(r) => {
                if winner.as_ref().is_none_or(|w| r.n1_upper < w.n1_upper) {
                    winner = Some(r);
                }
            }
            Err(e) => skipped.push(format!("{method}: {e}")),
        }
    }
    let mut w = winner.ok_or_else(|| BoundError::DomainError("no method applies".into()))?;
    w.notes.extend(skipped.into_iter().map(|s| format!("skipped {s}")));
    Ok(w)
}

/// `N₁` bound for every candidate method that applies.
pub fn all_bounds(params: &CurveParams, opts: &EvalOptions) -> Vec<(Method, Result<BigInt>)> {
    BEST_CANDIDATES.iter().map(|&m| (m, evaluate(params, m, opts).map(|r| r.n1_upper))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u64, g: u64) -> CurveParams {
        CurveParams::new(q, g).unwrap()
    }

    fn n1(q: u64, g: u64, m: Method) -> BigInt {
        evaluate(&p(q, g), m, &EvalOptions::default()).unwrap().n1_upper
    }

    #[test]
    fn single_methods() {
        assert_eq!(n1(4, 3, Method::Weil), BigInt::from(17));
        assert_eq!(n1(2, 1, Method::Weil), BigInt::from(5));
        assert_eq!(n1(3, 1, Method::Ihara), BigInt::from(7));
        assert_eq!(n1(5, 10, Method::IharaSerre), BigInt::from(36));
        assert_eq!(n1(5, 19, Method::Wo3Serre), BigInt::from(53));
        let r = evaluate(&p(5, 10), Method::IharaSerre, &EvalOptions::default()).unwrap();
        assert_eq!(r.notes, vec!["alpha integral; coincides with Ihara".to_string()]);
        assert!(matches!(
            evaluate(&p(49, 2), Method::Ihara, &EvalOptions::default()),
            Err(BoundError::BelowIharaRange { .. })
        ));
        assert!(evaluate(&p(5, 4), Method::BoundA2, &EvalOptions::default()).is_err());
    }

    #[test]
    fn validity_flags() {
        let o = EvalOptions::default();
        assert!(evaluate(&p(49, 2), Method::Weil, &o).unwrap().in_validity_range);
        assert!(!evaluate(&p(49, 100), Method::Weil, &o).unwrap().in_validity_range);
        assert!(evaluate(&p(11, 8), Method::Ihara, &o).unwrap().in_validity_range);
        assert!(!evaluate(&p(5, 19), Method::Ihara, &o).unwrap().in_validity_range);
    }

    #[test]
    fn best_picks_minimum() {
        let o = EvalOptions::default();
        let b = best(&p(5, 19), &o).unwrap();
        assert_eq!(b.n1_upper, BigInt::from(53));
        assert_eq!(b.method, Method::Wo3Serre);
        let b = best(&p(11, 8), &o).unwrap();
        for (_, v) in all_bounds(&p(11, 8), &o) {
            if let Ok(v) = v {
                assert!(b.n1_upper <= v);
            }
        }
    }
}
