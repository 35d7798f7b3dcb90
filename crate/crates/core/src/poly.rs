//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial lives in a [`VariableContext`] that fixes an ordered list of
//! variables, each tagged as a coordinate (projective coordinates of the
//! ambient space) or a parameter (group parameters such as `a`, `b`, `t`).
//! Terms are stored as a map from exponent vectors to nonzero coefficients,
//! so equality of the maps is equality of polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every coefficient.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Role of a variable inside a context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    Coordinate,
    Parameter,
}

/// Ordered list of named variables, coordinates first, then parameters.
///
/// The partition is fixed at construction; polynomials over the same context
/// share it through an `Arc`.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableContext {
    names: Vec<String>,
    n_coords: usize,
}

impl VariableContext {
    /// Build a context from coordinate names followed by parameter names.
    /// Names must be pairwise distinct.
    pub fn new(coords: &[&str], params: &[&str]) -> Arc<Self> {
        let mut names: Vec<String> = Vec::with_capacity(coords.len() + params.len());
        names.extend(coords.iter().map(|s| s.to_string()));
        names.extend(params.iter().map(|s| s.to_string()));
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name {n} in context"
            );
        }
        Arc::new(VariableContext {
            names,
            n_coords: coords.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn n_coordinates(&self) -> usize {
        self.n_coords
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> VarRole {
        if i < self.n_coords {
            VarRole::Coordinate
        } else {
            VarRole::Parameter
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.names[..self.n_coords]
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.names[self.n_coords..]
    }
}

/// Check that two context handles denote the same context.
fn same_ctx(a: &Arc<VariableContext>, b: &Arc<VariableContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, one entry per context variable.
///
/// Ordered by graded reverse-lexicographic order on the full variable list;
/// the order only fixes a canonical iteration sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree_on(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.total_degree();
        let db = other.total_degree();
        if da != db {
            return da.cmp(&db);
        }
        // grevlex tie break: the monomial whose last differing exponent is
        // smaller is the larger one
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of testing homogeneity in the coordinate variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial: homogeneous by convention, degree undefined.
    Zero,
    /// All terms share this total degree in the coordinates.
    Homogeneous(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Invariants: no stored zero coefficients; coefficients are kept normalised
/// (coprime numerator/denominator, positive denominator) by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: Rat) -> Self {
        let mut p = Polynomial::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Polynomial::constant(ctx, Rat::one())
    }

    /// The variable with the given index, as a polynomial.
    pub fn variable(ctx: &Arc<VariableContext>, index: usize) -> Self {
        assert!(index < ctx.len(), "variable index out of range");
        let mut exps = vec![0; ctx.len()];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::from_exps(exps), Rat::one());
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The variable with the given name.
    pub fn var(ctx: &Arc<VariableContext>, name: &str) -> Self {
        let i = ctx
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Polynomial::variable(ctx, i)
    }

    /// Single term `c * prod(var_i ^ e_i)` given as (index, exponent) pairs.
    pub fn term(ctx: &Arc<VariableContext>, c: Rat, pairs: &[(usize, u32)]) -> Self {
        if c.is_zero() {
            return Polynomial::zero(ctx);
        }
        let mut exps = vec![0; ctx.len()];
        for &(i, e) in pairs {
            exps[i] += e;
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::from_exps(exps), c);
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Leading term in graded reverse-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.last_key_value()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True if the polynomial only involves parameter variables.
    pub fn is_parameter_only(&self) -> bool {
        let nc = self.ctx.n_coordinates();
        self.terms
            .keys()
            .all(|m| m.exps()[..nc].iter().all(|&e| e == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The value of a constant polynomial (zero polynomial gives 0).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Total degree in the coordinate variables, if homogeneous.
    pub fn homogeneity(&self) -> Homogeneity {
        if self.is_zero() {
            return Homogeneity::Zero;
        }
        let nc = self.ctx.n_coordinates();
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree_on(0..nc);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Homogeneity::Inhomogeneous,
                _ => {}
            }
        }
        Homogeneity::Homogeneous(deg.unwrap())
    }

    /// Maximum exponent of a single variable across all terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Split into coordinate monomials with parameter-polynomial coefficients.
    ///
    /// Keys carry zero exponents on all parameters; values carry zero
    /// exponents on all coordinates.
    pub fn coordinate_coefficients(&self) -> BTreeMap<Monomial, Polynomial> {
        let nc = self.ctx.n_coordinates();
        let nv = self.ctx.len();
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coord = vec![0u32; nv];
            let mut param = vec![0u32; nv];
            coord[..nc].copy_from_slice(&m.exps()[..nc]);
            param[nc..].copy_from_slice(&m.exps()[nc..]);
            out.entry(Monomial::from_exps(coord))
                .or_insert_with(|| Polynomial::zero(&self.ctx))
                .insert_term(Monomial::from_exps(param), c.clone());
        }
        out
    }

    /// Replace every variable by its image, mapping into `target`.
    ///
    /// `images[i]` is the image of variable `i` of this polynomial's context
    /// and must live in `target`.
    pub fn compose(
        &self,
        target: &Arc<VariableContext>,
        images: &[Polynomial],
    ) -> Result<Polynomial> {
        if images.len() != self.ctx.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ctx.len(),
                found: images.len(),
            });
        }
        for img in images {
            if !same_ctx(&img.ctx, target) {
                return Err(Error::ContextMismatch);
            }
        }
        // cache powers of each image
        let mut powers: Vec<BTreeMap<u32, Polynomial>> = vec![BTreeMap::new(); images.len()];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers[i]
                    .entry(e)
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                prod = &prod * &p;
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Map this polynomial into another context by variable name.
    ///
    /// Every variable occurring here must exist in `target` under the same
    /// name.
    pub fn map_to(&self, target: &Arc<VariableContext>) -> Result<Polynomial> {
        let mut images = Vec::with_capacity(self.ctx.len());
        for i in 0..self.ctx.len() {
            let name = self.ctx.name(i);
            match target.index_of(name) {
                Some(j) => images.push(Polynomial::variable(target, j)),
                None => {
                    if self.degree_in(i) > 0 {
                        return Err(Error::MissingSubstitution(name.to_string()));
                    }
                    images.push(Polynomial::zero(target));
                }
            }
        }
        self.compose(target, &images)
    }

    /// Substitute coordinate variables by polynomials of the same context.
    ///
    /// Parameter variables pass through unchanged. Every coordinate variable
    /// occurring in the polynomial must have an image; keys naming parameter
    /// variables (or unknown names) are rejected.
    pub fn substitute(&self, sigma: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let n = self.ctx.len();
        let mut images: Vec<Option<Polynomial>> = vec![None; n];
        for (name, image) in sigma {
            let i = self
                .ctx
                .index_of(name)
                .ok_or_else(|| Error::NotACoordinate(name.to_string()))?;
            if self.ctx.role(i) != VarRole::Coordinate {
                return Err(Error::NotACoordinate(name.to_string()));
            }
            if !same_ctx(&image.ctx, &self.ctx) {
                return Err(Error::ContextMismatch);
            }
            if images[i].is_some() {
                return Err(Error::DuplicateSubstitution(name.to_string()));
            }
            images[i] = Some(image.clone());
        }
        let mut full = Vec::with_capacity(n);
        for i in 0..n {
            match images[i].take() {
                Some(p) => full.push(p),
                None => {
                    if self.ctx.role(i) == VarRole::Coordinate && self.degree_in(i) > 0 {
                        return Err(Error::MissingSubstitution(self.ctx.name(i).to_string()));
                    }
                    full.push(Polynomial::variable(&self.ctx, i));
                }
            }
        }
        self.compose(&self.ctx, &full)
    }

    /// Substitute parameters by rational values, staying in the same context.
    pub fn specialize_parameters(&self, values: &[(usize, Rat)]) -> Polynomial {
        let n = self.ctx.len();
        let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::variable(&self.ctx, i)).collect();
        for (i, v) in values {
            debug_assert_eq!(self.ctx.role(*i), VarRole::Parameter);
            images[*i] = Polynomial::constant(&self.ctx, v.clone());
        }
        self.compose(&self.ctx, &images).expect("same-context specialization")
    }

    /// Evaluate at a full rational point (one value per variable).
    pub fn evaluate(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.ctx.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &values[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Normal form modulo the relation `s * t = 1` between two variables.
    ///
    /// Cancels common powers of `s` and `t` in every term, which maps the
    /// quotient ring isomorphically onto Laurent polynomials in `t`; the
    /// result is zero exactly when the polynomial lies in the ideal (s*t - 1).
    pub fn cancel_inverse_pair(&self, s: usize, t: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let k = m.exp(s).min(m.exp(t));
            if k == 0 {
                out.insert_term(m.clone(), c.clone());
            } else {
                let mut exps = m.exps().to_vec();
                exps[s] -= k;
                exps[t] -= k;
                out.insert_term(Monomial::from_exps(exps), c.clone());
            }
        }
        out
    }

    /// Exact division; returns `None` when the divisor does not divide.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        assert!(same_ctx(&self.ctx, &divisor.ctx));
        let (dm, dc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ctx);
        while let Some((lm, lc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = lm.div(&dm)?;
            let qc = lc / &dc;
            let t = {
                let mut terms = BTreeMap::new();
                terms.insert(qm, qc);
                Polynomial {
                    ctx: self.ctx.clone(),
                    terms,
                }
            };
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch in +");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch in -");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch in *");
        let mut out = Polynomial::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_mono = m.total_degree() == 0;
            if !abs.is_one() || is_const_mono {
                write!(f, "{abs}")?;
                if !is_const_mono {
                    write!(f, "*")?;
                }
            }
            let mut sep = false;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                write!(f, "{}", self.ctx.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// All monomials of the given total degree in the coordinate variables,
/// sorted descending so the leading monomial comes first.
pub fn coordinate_monomials(ctx: &Arc<VariableContext>, degree: u32) -> Vec<Monomial> {
    let nc = ctx.n_coordinates();
    let nv = ctx.len();
    let mut out = Vec::new();
    let mut exps = vec![0u32; nv];
    fn rec(i: usize, left: u32, nc: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == nc - 1 {
            exps[i] = left;
            out.push(Monomial::from_exps(exps.clone()));
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, nc, exps, out);
        }
        exps[i] = 0;
    }
    if nc > 0 {
        rec(0, degree, nc, &mut exps, &mut out);
    } else if degree == 0 {
        out.push(Monomial::one(nv));
    }
    out.sort();
    out.reverse();
    out
}
