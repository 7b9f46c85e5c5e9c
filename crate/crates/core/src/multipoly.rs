//! Exact multivariate polynomials over [`Scalar`].
//!
//! Terms are kept in a `BTreeMap` from exponent vector to nonzero
//! coefficient, so the representation is canonical and iteration order is
//! the lexicographic order on exponent vectors (first variable most
//! significant). The variable list travels with each polynomial; binary
//! operations insist that both operands use the same list.

use crate::scalar::{Scalar, ScalarField};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// A shared, ordered list of variable names.
#[derive(Clone, Debug)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        VarSet {
            names: Arc::new(names.into_iter().map(Into::into).collect()),
        }
    }

    /// Homogeneous coordinates `z0..z4` of `P^4`.
    pub fn projective5() -> Self {
        Self::new(vec!["z0", "z1", "z2", "z3", "z4"])
    }

    /// `z0..z4` followed by the pencil parameters `lambda, mu`.
    pub fn projective5_pencil() -> Self {
        Self::new(vec!["z0", "z1", "z2", "z3", "z4", "lambda", "mu"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarSet {}

/// How a polynomial sits with respect to grading on a chosen variable range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// A multivariate polynomial with exact scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Vec<u16>, Scalar>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::monomial(vars, &[(i, 1)], Scalar::one())
    }

    /// `c * prod vars[i]^e` from a sparse exponent list.
    pub fn monomial(vars: &VarSet, exps: &[(usize, u16)], c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        if c.is_zero() {
            return p;
        }
        let mut key = vec![0u16; vars.len()];
        for &(i, e) in exps {
            assert!(i < vars.len(), "variable index out of range");
            key[i] += e;
        }
        p.terms.insert(key, c);
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient of an exponent vector (zero if absent).
    pub fn coeff(&self, key: &[u16]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The widest scalar field appearing among the coefficients.
    pub fn field(&self) -> ScalarField {
        if self
            .terms
            .values()
            .any(|c| c.field() == ScalarField::QZeta5)
        {
            ScalarField::QZeta5
        } else {
            ScalarField::Q
        }
    }

    fn insert_add(&mut self, key: Vec<u16>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "incompatible variable lists: {:?} vs {:?}",
            self.vars.names(),
            other.vars.names()
        );
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (k, c) in &self.terms {
            out.insert_add(k.clone(), c * s);
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (k, c) in &self.terms {
            let e = k[i];
            if e == 0 {
                continue;
            }
            let mut key = k.clone();
            key[i] = e - 1;
            out.insert_add(key, c * &Scalar::from_i64(e as i64));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Simultaneous substitution `vars[i] -> images[i]`. The images must all
    /// share a common variable list, which becomes the list of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for im in images {
            assert!(im.vars == target, "images must share a variable list");
        }
        // memoized powers per variable
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|im| vec![MultiPoly::one(&target), im.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (k, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &e) in k.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluate at a point (one scalar per variable).
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars.len(), "one value per variable");
        let mut acc = Scalar::zero();
        for (k, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in k.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &point[i];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitute a single variable by a constant, keeping the variable list.
    pub fn eval_var(&self, i: usize, value: &Scalar) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (k, c) in &self.terms {
            let e = k[i];
            let mut term = c.clone();
            for _ in 0..e {
                term = &term * value;
            }
            let mut key = k.clone();
            key[i] = 0;
            out.insert_add(key, term);
        }
        out
    }

    /// Grading over the variable range `lo..hi`: the common degree of all
    /// terms, when there is one.
    pub fn homogeneity(&self, lo: usize, hi: usize) -> Homogeneity {
        let mut degree: Option<u32> = None;
        for k in self.terms.keys() {
            let d: u32 = k[lo..hi].iter().map(|&e| e as u32).sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Homogeneity::Mixed,
                _ => {}
            }
        }
        match degree {
            None => Homogeneity::Zero,
            Some(d) => Homogeneity::Degree(d),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|k| k.iter().map(|&e| e as u32).sum())
            .max()
    }

    /// Leading (lexicographically greatest) term.
    pub fn leading_term(&self) -> Option<(&Vec<u16>, &Scalar)> {
        self.terms.iter().next_back()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key: Vec<u16> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.insert_add(key, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in k.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.vars.name(i))?,
                    _ => write!(f, "*{}^{}", self.vars.name(i), e)?,
                }
            }
        }
        Ok(())
    }
}
