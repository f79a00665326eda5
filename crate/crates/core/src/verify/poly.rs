//! Dense univariate polynomials over `Q` with Sturm sequences.

use num_traits::{One, Signed, Zero};

use super::hp::Hp;
use crate::qext::{int, Quad, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    /// Coefficients, constant term first, no trailing zeros.
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `u`.
    pub fn x() -> Poly {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, u: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * u + c)
    }

    pub fn eval_quad(&self, u: &Quad) -> Quad {
        self.coeffs.iter().rev().fold(Quad::from_int(0), |acc, c| acc * u + c.clone())
    }

    pub fn eval_hp(&self, u: &Hp) -> Hp {
        self.coeffs.iter().rev().fold(Hp::zero(), |acc, c| acc * u + Hp::from_rational(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Poly::new((0..n).map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero)).collect())
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / divisor.lead();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = Rational::one() / self.lead();
        self.scale(&inv)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same roots, each simple.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// `p, p', −rem(p, p'), …`
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().unwrap().div_rem(&next).1.scale(&int(-1));
            seq.push(next);
            next = r;
        }
        seq
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn rational_sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn variations_at(seq: &[Poly], u: &Rational) -> usize {
    variations(seq.iter().map(|p| rational_sign(&p.eval(u))))
}

pub fn variations_at_quad(seq: &[Poly], u: &Quad) -> usize {
    variations(seq.iter().map(|p| p.eval_quad(u).signum()))
}

/// Distinct roots in the open interval `(a, b)`; neither end may be a root.
pub fn count_roots_quad(seq: &[Poly], a: &Quad, b: &Quad) -> usize {
    variations_at_quad(seq, a) - variations_at_quad(seq, b)
}

/// Disjoint open intervals `(lo, hi)` each holding exactly one distinct
/// root of `p` inside `(lo0, hi0)`, or degenerate `[r, r]` for a rational
/// root hit exactly. The ends `lo0`, `hi0` must not be roots.
pub fn isolate_roots(p: &Poly, lo0: &Rational, hi0: &Rational) -> Vec<(Rational, Rational)> {
    let seq = p.sturm_sequence();
    let mut out = Vec::new();
    let mut stack = vec![(lo0.clone(), hi0.clone(), variations_at(&seq, lo0), variations_at(&seq, hi0))];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let n = vlo - vhi;
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        // split at a non-root point; there are finitely many roots
        let width = &hi - &lo;
        let mut k = 2i64;
        let mid = loop {
            let m = &lo + &width / int(k);
            if !p.eval(&m).is_zero() {
                break m;
            }
            k += 1;
        };
        let vmid = variations_at(&seq, &mid);
        stack.push((mid.clone(), hi, vmid, vhi));
        stack.push((lo, mid, vlo, vmid));
    }
    out.sort();
    out
}

/// Shrinks an isolating interval of a simple root of `p` to width at most
/// `width` by sign bisection.
pub fn refine_root(p: &Poly, mut lo: Rational, mut hi: Rational, width: &Rational) -> (Rational, Rational) {
    let slo = rational_sign(&p.eval(&lo));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / int(2);
        let s = rational_sign(&p.eval(&mid));
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qext::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 0, 1]); // u² − 1
        let b = p(&[1, 1]); // u + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(b.mul(&b), p(&[1, 2, 1]));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[1, 2, 1]).squarefree(), p(&[1, 1]));
    }

    #[test]
    fn sturm_counts() {
        // (u − 1)(u − 2)(u + 3)
        let f = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[3, 1]));
        let seq = f.sturm_sequence();
        let q = |x: i64| Quad::from_int(x);
        assert_eq!(count_roots_quad(&seq, &q(-10), &q(10)), 3);
        assert_eq!(count_roots_quad(&seq, &q(0), &q(10)), 2);
        let s2 = Quad::sqrt_int(2);
        assert_eq!(count_roots_quad(&seq, &-&s2, &s2), 1);
        // double root counted once
        let g = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[5, 1]));
        assert_eq!(count_roots_quad(&g.sturm_sequence(), &q(-10), &q(10)), 2);
    }

    #[test]
    fn isolation_and_refinement() {
        // u² − 2 and a rational root at 1/2
        let f = p(&[-2, 0, 1]).mul(&Poly::new(vec![rat(-1, 2), int(1)]));
        let roots = isolate_roots(&f, &int(-4), &int(4));
        assert_eq!(roots.len(), 3);
        let w = rat(1, 1 << 30);
        let (lo, hi) = refine_root(&f.squarefree(), roots[2].0.clone(), roots[2].1.clone(), &w);
        assert!(&hi - &lo <= w);
        assert!(&lo * &lo <= int(2) && &hi * &hi >= int(2));
    }
}
