//! Exact scalars: rationals, optionally extended by a primitive fifth root
//! of unity.
//!
//! An element of `Q(zeta_5)` is stored as four rationals in the basis
//! `1, z, z^2, z^3` with `z^4 = -(1 + z + z^2 + z^3)` (the minimal polynomial
//! `z^4 + z^3 + z^2 + z + 1`). Mixed arithmetic promotes rationals into the
//! extension; comparisons see through the embedding, so `Scalar::from_i64(2)`
//! equals its promoted form.
//!
//! `sqrt(5)` is representable as `1 + 2 z + 2 z^4`.

use crate::rational::{display, rat, Rat};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Which field a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarField {
    Q,
    QZeta5,
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Q => write!(f, "Q"),
            ScalarField::QZeta5 => write!(f, "Q(zeta5)"),
        }
    }
}

/// A rational or an element of `Q(zeta_5)`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(Rat),
    Cyc([Rat; 4]),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(rat(0))
    }

    pub fn one() -> Self {
        Scalar::Rat(rat(1))
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rat(rat(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Rat(r)
    }

    /// The primitive fifth root of unity `z`.
    pub fn zeta() -> Self {
        Scalar::Cyc([rat(0), rat(1), rat(0), rat(0)])
    }

    /// `z^k` for any integer exponent, reduced mod `z^5 = 1`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(5) as usize;
        if k == 4 {
            Scalar::Cyc([rat(-1), rat(-1), rat(-1), rat(-1)])
        } else if k == 0 {
            Scalar::one()
        } else {
            let mut c = [rat(0), rat(0), rat(0), rat(0)];
            c[k] = rat(1);
            Scalar::Cyc(c)
        }
    }

    /// `sqrt(5) = 1 + 2 z + 2 z^4` as an element of `Q(zeta_5)`.
    pub fn sqrt5() -> Self {
        &(&Scalar::one() + &(&Scalar::from_i64(2) * &Scalar::zeta()))
            + &(&Scalar::from_i64(2) * &Scalar::zeta_pow(4))
    }

    pub fn field(&self) -> ScalarField {
        match self {
            Scalar::Rat(_) => ScalarField::Q,
            Scalar::Cyc(_) => ScalarField::QZeta5,
        }
    }

    fn as_cyc(&self) -> [Rat; 4] {
        match self {
            Scalar::Rat(r) => [r.clone(), rat(0), rat(0), rat(0)],
            Scalar::Cyc(c) => c.clone(),
        }
    }

    /// Drop back to `Rat` whenever the `zeta` components vanish.
    fn normalized(self) -> Self {
        match self {
            Scalar::Cyc(c) if c[1].is_zero() && c[2].is_zero() && c[3].is_zero() => {
                Scalar::Rat(c[0].clone())
            }
            s => s,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    /// The rational value, if the scalar lies in `Q`.
    pub fn to_rat(&self) -> Option<Rat> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Cyc(c) => {
                (c[1].is_zero() && c[2].is_zero() && c[3].is_zero()).then(|| c[0].clone())
            }
        }
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(rat(1) / r)),
            Scalar::Cyc(_) => {
                // Solve (self) * x = 1 as a 4x4 rational linear system: the
                // columns of the matrix are self * z^j expressed in the basis.
                let mut m: Vec<Vec<Rat>> = vec![vec![rat(0); 5]; 4];
                for j in 0..4 {
                    let col = (self * &Scalar::zeta_pow(j as i64)).as_cyc();
                    for i in 0..4 {
                        m[i][j] = col[i].clone();
                    }
                }
                m[0][4] = rat(1);
                for col in 0..4 {
                    let pivot = (col..4)
                        .find(|&r| !m[r][col].is_zero())
                        .ok_or(ScalarError::DivisionByZero)?;
                    m.swap(col, pivot);
                    let p = m[col][col].clone();
                    for j in col..5 {
                        m[col][j] = &m[col][j] / &p;
                    }
                    for r in 0..4 {
                        if r != col && !m[r][col].is_zero() {
                            let f = m[r][col].clone();
                            for j in col..5 {
                                let delta = &f * &m[col][j];
                                m[r][j] = &m[r][j] - &delta;
                            }
                        }
                    }
                }
                let x = [
                    m[0][4].clone(),
                    m[1][4].clone(),
                    m[2][4].clone(),
                    m[3][4].clone(),
                ];
                Ok(Scalar::Cyc(x).normalized())
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            _ => self.as_cyc() == other.as_cyc(),
        }
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let (a, b) = (self.as_cyc(), rhs.as_cyc());
                Scalar::Cyc([&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2], &a[3] + &b[3]])
                    .normalized()
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc([-&c[0], -&c[1], -&c[2], -&c[3]]),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => {
                let (a, b) = (self.as_cyc(), rhs.as_cyc());
                // raw product with exponents 0..=6, then reduce by z^5 = 1
                // and z^4 = -(1 + z + z^2 + z^3)
                let mut raw = vec![rat(0); 7];
                for i in 0..4 {
                    if a[i].is_zero() {
                        continue;
                    }
                    for j in 0..4 {
                        if b[j].is_zero() {
                            continue;
                        }
                        raw[i + j] += &a[i] * &b[j];
                    }
                }
                for e in (5..=6).rev() {
                    let v = std::mem::replace(&mut raw[e], rat(0));
                    raw[e - 5] += v;
                }
                let top = std::mem::replace(&mut raw[4], rat(0));
                let mut c = [
                    raw[0].clone(),
                    raw[1].clone(),
                    raw[2].clone(),
                    raw[3].clone(),
                ];
                for x in c.iter_mut() {
                    *x -= &top;
                }
                Scalar::Cyc(c).normalized()
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", display(r)),
            Scalar::Cyc(c) => write!(
                f,
                "[{},{},{},{}]",
                display(&c[0]),
                display(&c[1]),
                display(&c[2]),
                display(&c[3])
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_has_order_five() {
        let mut p = Scalar::one();
        for _ in 0..5 {
            p = &p * &Scalar::zeta();
        }
        assert_eq!(p, Scalar::one());
        // 1 + z + z^2 + z^3 + z^4 = 0
        let mut s = Scalar::zero();
        for k in 0..5 {
            s = &s + &Scalar::zeta_pow(k);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let r = Scalar::sqrt5();
        assert_eq!(&r * &r, Scalar::from_i64(5));
    }

    #[test]
    fn promoted_rational_equality() {
        let two = Scalar::from_i64(2);
        let promoted = &two + &(&Scalar::zeta() - &Scalar::zeta());
        assert_eq!(two, promoted);
        assert_eq!(promoted.field(), ScalarField::Q); // normalized back down
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let x = &(&Scalar::from_i64(3) * &Scalar::zeta_pow(2)) + &Scalar::from_i64(1);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, Scalar::one());
        assert_eq!(Scalar::zero().inverse(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn field_axiom_spot_checks() {
        let a = &Scalar::zeta() + &Scalar::from_i64(2);
        let b = &Scalar::zeta_pow(3) - &Scalar::from_i64(1);
        let c = Scalar::sqrt5();
        // associativity, distributivity, commutativity on a sample
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a * &b, &b * &a);
    }
}
