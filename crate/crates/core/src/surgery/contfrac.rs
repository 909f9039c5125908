//! Negative continued fractions for lens-space surgery chains.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::SurgeryError;

/// `a_1 - 1/(a_2 - 1/(⋯ - 1/a_n))` with every `a_i ≤ -2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContFrac {
    coefficients: Vec<i64>,
}

impl ContFrac {
    /// # Errors
    /// [`SurgeryError::BadContFrac`] if the list is empty or some entry
    /// exceeds `-2`.
    pub fn new(coefficients: Vec<i64>) -> Result<Self, SurgeryError> {
        if coefficients.is_empty() || coefficients.iter().any(|&a| a > -2) {
            return Err(SurgeryError::BadContFrac(coefficients));
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// The value of the nested fraction (always `-p/q`).
    pub fn evaluate(&self) -> BigRational {
        // a - 1/(n/d) = (a n - d)/n keeps n/d in lowest terms
        let mut it = self.coefficients.iter().rev();
        let mut num = BigInt::from(*it.next().expect("nonempty"));
        let mut den = BigInt::one();
        for &a in it {
            let next = &num * a - &den;
            den = std::mem::replace(&mut num, next);
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        BigRational::new_raw(num, den)
    }
}

impl fmt::Display for ContFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// The expansion of `-p/q` for coprime `p > q ≥ 1`.
pub fn continued_fraction(p: i64, q: i64) -> Result<ContFrac, SurgeryError> {
    if q < 1 || p <= q || p.gcd(&q) != 1 {
        return Err(SurgeryError::BadPQ { p, q });
    }
    let (mut p, mut q) = (p, q);
    let mut out = Vec::new();
    loop {
        let c = Integer::div_ceil(&p, &q);
        out.push(-c);
        let s = c * q - p;
        if s == 0 {
            break;
        }
        (p, q) = (q, s);
    }
    Ok(ContFrac { coefficients: out })
}

/// `b_k = 2(k-1) + a_1 + ⋯ + a_k`.
pub fn rolled_up_framings(cf: &ContFrac) -> Vec<i64> {
    cf.coefficients
        .iter()
        .scan(0i64, |sum, &a| {
            *sum += a;
            Some(*sum)
        })
        .enumerate()
        .map(|(k, s)| 2 * k as i64 + s)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_space_expansions() {
        assert_eq!(continued_fraction(3, 1).unwrap().coefficients(), [-3]);
        assert_eq!(continued_fraction(6, 1).unwrap().coefficients(), [-6]);
        assert_eq!(
            continued_fraction(10, 7).unwrap().coefficients(),
            [-2, -2, -4]
        );
        assert_eq!(
            continued_fraction(24, 7).unwrap().coefficients(),
            [-4, -2, -4]
        );
        assert_eq!(
            continued_fraction(10, 7).unwrap().to_string(),
            "[-2, -2, -4]"
        );
    }

    #[test]
    fn bad_input() {
        assert_eq!(
            continued_fraction(4, 2),
            Err(SurgeryError::BadPQ { p: 4, q: 2 })
        );
        assert_eq!(
            continued_fraction(3, 3),
            Err(SurgeryError::BadPQ { p: 3, q: 3 })
        );
        assert_eq!(
            continued_fraction(3, 0),
            Err(SurgeryError::BadPQ { p: 3, q: 0 })
        );
        assert!(ContFrac::new(vec![-2, -1]).is_err());
        assert!(ContFrac::new(vec![]).is_err());
    }

    #[test]
    fn reconstruction_up_to_200() {
        for p in 2..=200i64 {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let cf = continued_fraction(p, q).unwrap();
                assert!(cf.coefficients().iter().all(|&a| a <= -2));
                assert_eq!(
                    cf.evaluate(),
                    BigRational::new((-p).into(), q.into()),
                    "{p}/{q}"
                );
                let b = rolled_up_framings(&cf);
                assert!(b.windows(2).all(|w| w[1] <= w[0]));
            }
        }
    }

    #[test]
    fn rolled_up() {
        let f = |v: Vec<i64>| rolled_up_framings(&ContFrac::new(v).unwrap());
        assert_eq!(f(vec![-3]), [-3]);
        assert_eq!(f(vec![-2, -2, -4]), [-2, -2, -4]);
        assert_eq!(f(vec![-2, -2]), [-2, -2]);
        assert_eq!(f(vec![-4, -2, -4]), [-4, -4, -6]);
    }
}
