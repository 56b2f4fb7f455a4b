//! Dense integer polynomials: primitive PRS gcd, squarefree decomposition and
//! Sturm sequences. Coefficients are stored low degree first.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::SparsePoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coefs: Vec<BigInt>) -> Self {
        while coefs.last().is_some_and(Zero::is_zero) {
            coefs.pop();
        }
        IntPoly(coefs)
    }

    pub fn from_sparse(p: &SparsePoly) -> Self {
        IntPoly::new(p.to_dense())
    }

    pub fn to_sparse(&self) -> SparsePoly {
        SparsePoly::from_dense(&self.0)
    }

    pub fn coefs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree of a nonzero polynomial, 0 for the zero polynomial.
    fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    fn lc(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if self.lc().is_negative() {
            g = -g;
        }
        IntPoly(self.0.iter().map(|c| c / &g).collect())
    }

    /// `lc(b)^(deg a - deg b + 1) * a  mod  b`.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.deg0();
        let lcb = b.lc().clone();
        let mut r = self.0.clone();
        let mut spare = (self.deg0() + 1).saturating_sub(db);
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let c = r[dr].clone();
            for x in r.iter_mut() {
                *x *= &lcb;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[dr - db + i] -= &c * bc;
            }
            spare -= 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let scale = num_traits::pow(lcb, spare);
        IntPoly::new(r.into_iter().map(|x| x * &scale).collect())
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.deg0() < b.deg0() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Exact quotient, `None` if `divisor` does not divide `self` over Z.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly(Vec::new()));
        }
        let dd = divisor.deg0();
        if self.deg0() < dd {
            return None;
        }
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); self.deg0() - dd + 1];
        for i in (0..q.len()).rev() {
            let (c, rem) = r[i + dd].div_rem(divisor.lc());
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in divisor.0.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Exact sign at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let (num, den) = (x.numer(), x.denom());
        let mut acc = self.0[d].clone();
        let mut den_pow = BigInt::one();
        for c in self.0[..d].iter().rev() {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        acc.sign_ordering()
    }

    pub fn sign_at_infinity(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else {
            self.lc().sign_ordering()
        }
    }

    /// Squarefree factors `(f_i, i)` with `self = c * prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.deg0() == 0 {
            return out;
        }
        let mut g = self.gcd(&self.derivative());
        let mut w = self.primitive().div_exact(&g).expect("gcd divides");
        let mut i = 1;
        while w.deg0() > 0 {
            let y = w.gcd(&g);
            let z = w.div_exact(&y).expect("gcd divides");
            if z.deg0() > 0 {
                out.push((z.primitive(), i));
            }
            i += 1;
            g = g.div_exact(&y).expect("gcd divides");
            w = y;
        }
        out
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Sturm sequence of the squarefree part of a polynomial; counts distinct
/// real roots.
#[derive(Debug, Clone)]
pub struct Sturm {
    seq: Vec<IntPoly>,
}

impl Sturm {
    pub fn new(p: &IntPoly) -> Self {
        let p = if p.deg0() == 0 {
            p.primitive()
        } else {
            let g = p.gcd(&p.derivative());
            p.primitive().div_exact(&g).expect("gcd divides").primitive()
        };
        let mut seq = vec![p.clone()];
        let mut next = p.derivative().primitive();
        while !next.is_zero() {
            let prev = seq.last().unwrap();
            let mut r = prev.pseudo_rem(&next);
            // pseudo_rem scales by lc^(delta+1); undo a negative scale
            let delta = prev.deg0() + 1 - next.deg0();
            let flip = next.lc().is_negative() && delta % 2 == 1;
            if !flip {
                r = IntPoly::new(r.0.into_iter().map(|c| -c).collect());
            }
            seq.push(next);
            next = r.primitive_keep_sign();
        }
        Sturm { seq }
    }

    /// The squarefree polynomial the sequence starts with.
    pub fn base(&self) -> &IntPoly {
        &self.seq[0]
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        let at_a = Self::variations(self.seq.iter().map(|p| p.sign_at(a)));
        let at_inf = Self::variations(self.seq.iter().map(IntPoly::sign_at_infinity));
        at_a - at_inf
    }
}

impl IntPoly {
    /// Divides by the positive content, keeping the sign of every coefficient.
    fn primitive_keep_sign(&self) -> Self {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        IntPoly(self.0.iter().map(|c| c / &g).collect())
    }
}
