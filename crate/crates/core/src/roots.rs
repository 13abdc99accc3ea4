//! Sturm sequences and real root isolation with exact rational endpoints.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intpoly::IntPolynomial;

/// An isolating interval. `lo == hi` marks an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    /// Closed-interval intersection test.
    pub fn overlaps(&self, other: &RootInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Sturm sequence of a squarefree polynomial, with positive scalings only.
pub fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone()];
    if p.deg() == 0 {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.deg() == 0 {
            break;
        }
        let r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        // prem = lc(b)^(k) * rem; keep the sign of -rem
        let k = (a.deg() - b.deg() + 1) as u32;
        let flip = b.leading().is_negative() && k % 2 == 1;
        let next = if flip { r } else { r.neg() };
        let c = next.content();
        let next = IntPolynomial::new(next.coeffs().iter().map(|x| x / &c).collect());
        seq.push(next);
    }
    seq
}

fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

pub fn variations_at(seq: &[IntPolynomial], x: &BigRational) -> usize {
    variations(seq.iter().map(|p| p.sign_at(x)))
}

fn sign_of(c: &BigInt) -> Ordering {
    if c.is_positive() {
        Ordering::Greater
    } else if c.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

fn variations_at_infinity(seq: &[IntPolynomial], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = sign_of(&p.leading());
        if !positive && p.deg() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }))
}

/// Number of distinct real roots of a squarefree polynomial in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[IntPolynomial], a: &BigRational, b: &BigRational) -> usize {
    variations_at(seq, a).saturating_sub(variations_at(seq, b))
}

/// Number of distinct real roots in the closed interval `[a, b]`.
pub fn count_roots_closed(seq: &[IntPolynomial], a: &BigRational, b: &BigRational) -> usize {
    let at_a = usize::from(seq[0].sign_at(a) == Ordering::Equal);
    count_roots(seq, a, b) + at_a
}

pub fn count_all_real_roots(seq: &[IntPolynomial]) -> usize {
    variations_at_infinity(seq, false).saturating_sub(variations_at_infinity(seq, true))
}

/// A power of two strictly greater than the absolute value of every root.
pub fn root_bound(p: &IntPolynomial) -> BigRational {
    let lc = p.leading().abs();
    let max = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // Cauchy: 1 + max|a_i| / |a_n|
    let ratio = BigRational::new(max, lc) + BigRational::one();
    let mut bound = BigRational::one();
    while bound <= ratio {
        bound *= BigRational::from(BigInt::from(2));
    }
    bound
}

/// Isolates the distinct real roots of `p`, ascending.
///
/// The procedure is deterministic: bisection of `(-B, B]` by Sturm counts, so
/// the returned intervals depend only on the squarefree part of `p`. Open
/// intervals never have a root of `p` at an endpoint.
pub fn isolate_real_roots(p: &IntPolynomial) -> Vec<RootInterval> {
    let sq = p.squarefree_part();
    if sq.deg() == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&sq);
    let bound = root_bound(&sq);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&seq, &lo, &hi);
        match n {
            0 => {}
            1 => out.push(tighten(&sq, &seq, lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
                // push right half first so the left half pops first
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Turns a half-open `(lo, hi]` with one root into an exact point or an open
/// interval whose endpoints are not roots.
fn tighten(
    p: &IntPolynomial,
    seq: &[IntPolynomial],
    mut lo: BigRational,
    mut hi: BigRational,
) -> RootInterval {
    if p.sign_at(&hi) == Ordering::Equal {
        return RootInterval {
            lo: hi.clone(),
            hi,
        };
    }
    while p.sign_at(&lo) == Ordering::Equal {
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        if p.sign_at(&mid) == Ordering::Equal {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if count_roots(seq, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootInterval { lo, hi }
}

/// One bisection step on an open isolating interval of a squarefree `p`.
///
/// Returns an exact interval if the midpoint happens to be the root.
pub fn bisect(p: &IntPolynomial, iv: &RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let mid = iv.midpoint();
    let sm = p.sign_at(&mid);
    if sm == Ordering::Equal {
        return RootInterval {
            lo: mid.clone(),
            hi: mid,
        };
    }
    let slo = p.sign_at(&iv.lo);
    if sm == slo {
        RootInterval {
            lo: mid,
            hi: iv.hi.clone(),
        }
    } else {
        RootInterval {
            lo: iv.lo.clone(),
            hi: mid,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[0, -1, 0, 1]);
        let seq = sturm_sequence(&f);
        assert_eq!(count_all_real_roots(&seq), 3);
        let g = p(&[-2, 0, 0, 1]);
        assert_eq!(count_all_real_roots(&sturm_sequence(&g)), 1);
        assert_eq!(count_all_real_roots(&sturm_sequence(&p(&[1, 0, 1]))), 0);
        // (a, b] semantics: root at b counted, root at a not
        assert_eq!(count_roots(&seq, &r(0, 1), &r(1, 1)), 1);
        assert_eq!(count_roots_closed(&seq, &r(0, 1), &r(1, 1)), 2);
    }

    #[test]
    fn isolate_cubic_with_rational_roots() {
        let ivs = isolate_real_roots(&p(&[0, -1, 0, 1]));
        assert_eq!(ivs.len(), 3);
        let pts: Vec<_> = ivs.iter().map(|iv| iv.lo.clone()).collect();
        assert!(ivs.iter().all(|iv| iv.is_exact()));
        assert_eq!(pts, vec![r(-1, 1), r(0, 1), r(1, 1)]);
    }

    #[test]
    fn isolate_irrational_roots() {
        let f = p(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&f);
        assert_eq!(ivs.len(), 2);
        for iv in &ivs {
            assert!(!iv.is_exact());
            assert_ne!(f.sign_at(&iv.lo), f.sign_at(&iv.hi));
        }
        assert!(!ivs[0].overlaps(&ivs[1]) || ivs[0].hi == ivs[1].lo);
        let cube = isolate_real_roots(&p(&[-2, 0, 0, 1]));
        assert_eq!(cube.len(), 1);
        let mut iv = cube[0].clone();
        while iv.width() > r(1, 100) {
            iv = bisect(&p(&[-2, 0, 0, 1]), &iv);
        }
        assert!(iv.lo >= r(12, 10) && iv.hi <= r(13, 10));
    }

    #[test]
    fn mixed_rational_and_irrational() {
        // (x - 1/2)(x^2 - 2)(x + 3)
        let f = p(&[-1, 2]).mul(&p(&[-2, 0, 1])).mul(&p(&[3, 1]));
        let ivs = isolate_real_roots(&f);
        assert_eq!(ivs.len(), 4);
        for w in ivs.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
        for iv in ivs.iter().filter(|iv| !iv.is_exact()) {
            assert_ne!(f.sign_at(&iv.lo), Ordering::Equal);
            assert_ne!(f.sign_at(&iv.hi), Ordering::Equal);
        }
    }
}
