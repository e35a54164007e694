use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = d.leading().recip();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Matrix substitution by Horner's rule.
    pub fn eval_matrix(&self, m: &RatMatrix) -> Result<RatMatrix> {
        if !m.is_square() {
            return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    /// `p / gcd(p, p')`, made monic.
    pub fn squarefree_radical(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(Self::constant(Rational::one()));
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.divrem(&g)?;
        Ok(q.monic())
    }

    /// Rational roots with multiplicity, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let radical = self.squarefree_radical().expect("nonzero");
        let mut roots: Vec<Rational> = Vec::new();
        let mut reduced = radical.clone();
        while reduced.coeffs.first().is_some_and(Rational::is_zero) {
            roots.push(Rational::zero());
            reduced.coeffs.remove(0);
        }
        let ints = integer_coefficients(&reduced.coeffs);
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let ps = divisors(&a0);
            let qs = divisors(&an);
            let mut cands: Vec<Rational> = Vec::new();
            for p in &ps {
                for q in &qs {
                    if p.gcd(q).is_one() {
                        let r = Rational::from_bigints(p.clone(), q.clone());
                        cands.push(-&r);
                        cands.push(r);
                    }
                }
            }
            cands.sort();
            cands.dedup();
            for c in cands {
                if reduced.eval(&c).is_zero() {
                    roots.push(c);
                }
            }
        }
        let mut out = Vec::new();
        for r in roots {
            let lin = Self::linear_root(&r);
            let mut p = self.clone();
            loop {
                let (q, rem) = p.divrem(&lin).expect("nonzero");
                if !rem.is_zero() {
                    break;
                }
                out.push(r.clone());
                p = q;
            }
        }
        out.sort();
        out
    }
}

fn integer_coefficients(coeffs: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(coeffs);
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization by trial division; a cofactor left after the trial
/// limit is treated as prime.
fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_examples() {
        let x2 = RatPolynomial::from_i64(&[0, 0, 1]);
        assert_eq!(x2.squarefree_radical().unwrap(), RatPolynomial::from_i64(&[0, 1]));
        let p = RatPolynomial::from_i64(&[2, -3, 1]);
        assert_eq!(p.squarefree_radical().unwrap(), p);
        let p = RatPolynomial::from_i64(&[0, 0, -1, 1]);
        assert_eq!(p.squarefree_radical().unwrap(), RatPolynomial::from_i64(&[0, -1, 1]));
        assert!(matches!(RatPolynomial::zero().squarefree_radical(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn roots_with_multiplicity() {
        // (2x - 1)^2 (x + 3) x
        let p = RatPolynomial::from_i64(&[-1, 2])
            .mul(&RatPolynomial::from_i64(&[-1, 2]))
            .mul(&RatPolynomial::from_i64(&[3, 1]))
            .mul(&RatPolynomial::from_i64(&[0, 1]));
        let half = Rational::new(1, 2);
        assert_eq!(p.rational_roots(), vec![Rational::from(-3), Rational::zero(), half.clone(), half]);
        assert!(RatPolynomial::from_i64(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn divrem_roundtrip() {
        let a = RatPolynomial::from_i64(&[5, 0, 3, 1]);
        let b = RatPolynomial::from_i64(&[1, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
    }
}
