//! Parametrized group representations acting projectively on coordinates.
//!
//! A representation stores a square matrix whose entries are polynomials in
//! the group parameters. The additive two-dimensional group uses parameters
//! (a, b); the semidirect product of the additive and multiplicative groups
//! uses (b, t) with the twist b -> t^-1 * b. Matrices with a t^-1 entry are
//! stored after projective rescaling by t so entries stay polynomial.

use std::sync::Arc;


use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Polynomial, Rat, VariableContext, VarRole};

/// The group a representation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// G_a^2 with parameters (a, b) and law (a1+a2, b1+b2).
    Additive2,
    /// G_a x| G_m with parameters (b, t) and law (b1 + t1^-1 b2, t1 t2).
    SemidirectGaGm,
}

/// Composition rule used when testing the homomorphism property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionLaw {
    /// (a1+a2, b1+b2)
    Additive,
    /// (b1 + t1^-1 b2, t1 t2)
    SemidirectTwisted,
    /// (b1 + b2, t1 t2) — the untwisted rule; the shipped semidirect matrix
    /// must fail under it.
    SemidirectUntwisted,
}

impl GroupKind {
    pub fn canonical_law(self) -> CompositionLaw {
        match self {
            GroupKind::Additive2 => CompositionLaw::Additive,
            GroupKind::SemidirectGaGm => CompositionLaw::SemidirectTwisted,
        }
    }

    /// Parameter values of the group identity element.
    pub fn identity_values(self) -> (Rat, Rat) {
        match self {
            GroupKind::Additive2 => (Rat::from_integer(0.into()), Rat::from_integer(0.into())),
            GroupKind::SemidirectGaGm => {
                (Rat::from_integer(0.into()), Rat::from_integer(1.into()))
            }
        }
    }
}

/// A matrix of polynomials in the group parameters, acting projectively.
#[derive(Debug, Clone)]
pub struct Representation {
    name: String,
    kind: GroupKind,
    matrix: PolyMatrix,
    /// Indices of the two group parameters in the matrix context.
    params: [usize; 2],
}

impl Representation {
    /// Validates the construction invariants: the matrix is square, entries
    /// involve only parameter variables, evaluating the group parameters at
    /// the identity yields a scalar multiple of the identity matrix, and the
    /// determinant is nonzero as a rational function.
    pub fn new(
        name: &str,
        kind: GroupKind,
        matrix: PolyMatrix,
        params: [usize; 2],
    ) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::BadMatrixShape(format!(
                "representation {name} must be square, got {}x{}",
                matrix.n_rows(),
                matrix.n_cols()
            )));
        }
        let ctx = matrix.context();
        for &p in &params {
            if ctx.role(p) != VarRole::Parameter {
                return Err(Error::InvalidModel(format!(
                    "group parameter {} of {name} is not a parameter variable",
                    ctx.name(p)
                )));
            }
        }
        for i in 0..matrix.n_rows() {
            for j in 0..matrix.n_cols() {
                if !matrix.get(i, j).is_parameter_only() {
                    return Err(Error::InvalidModel(format!(
                        "entry ({i},{j}) of {name} involves coordinate variables"
                    )));
                }
            }
        }
        let rep = Representation {
            name: name.to_string(),
            kind,
            matrix,
            params,
        };
        let at_identity = rep.specialize_pair(&rep.kind.identity_values());
        if !is_scalar_matrix(&at_identity) {
            return Err(Error::InvalidModel(format!(
                "{name} is not scalar at the group identity"
            )));
        }
        if rep.matrix.determinant().is_zero() {
            return Err(Error::InvalidModel(format!(
                "{name} has identically vanishing determinant"
            )));
        }
        Ok(rep)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        self.matrix.context()
    }

    pub fn dimension(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn group_params(&self) -> [usize; 2] {
        self.params
    }

    /// Constant matrix at specific values of the two group parameters.
    pub fn specialize_pair(&self, values: &(Rat, Rat)) -> PolyMatrix {
        let subs = [
            (self.params[0], values.0.clone()),
            (self.params[1], values.1.clone()),
        ];
        self.matrix.map(|e| e.specialize_parameters(&subs))
    }

    /// Pull a polynomial back along the action: substitute x_i -> (M x)_i.
    ///
    /// The polynomial must live in the representation's context and be
    /// homogeneous in the coordinates; the image is homogeneous of the same
    /// coordinate degree with coefficients in the parameters.
    pub fn act_on_polynomial(&self, f: &Polynomial) -> Result<Polynomial> {
        act_on_polynomial(&self.matrix, f)
    }

    /// Test the homomorphism property under the group's own composition law.
    pub fn check_group_law(&self) -> LawCheck {
        self.check_group_law_with(self.kind.canonical_law())
    }

    /// Test the homomorphism property under an explicit composition law.
    ///
    /// Fresh copies of the group parameters are introduced for both factors;
    /// the product matrix must equal the matrix of the composed element up to
    /// one common scalar rational function. For the twisted law the composed
    /// b-parameter involves t1^-1; a formal inverse variable subject to
    /// s1 * t1 = 1 keeps all entries polynomial.
    pub fn check_group_law_with(&self, law: CompositionLaw) -> LawCheck {
        let ctx = self.context();
        let (p0, p1) = (self.params[0], self.params[1]);
        let name0 = ctx.name(p0);
        let name1 = ctx.name(p1);

        // doubled parameter list: group parameters twice, extras once
        let fresh = |n: &str, k: usize| format!("{n}__{k}");
        let mut params: Vec<String> = vec![
            fresh(name0, 1),
            fresh(name1, 1),
            fresh(name0, 2),
            fresh(name1, 2),
        ];
        let needs_inverse = matches!(law, CompositionLaw::SemidirectTwisted);
        if needs_inverse {
            params.push(format!("{name1}__1_inv"));
        }
        for p in ctx.parameter_names() {
            if p != name0 && p != name1 {
                params.push(p.clone());
            }
        }
        let coord_names: Vec<&str> = ctx.coordinate_names().iter().map(|s| s.as_str()).collect();
        let param_refs: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
        let big = VariableContext::new(&coord_names, &param_refs);

        let var = |n: &str| Polynomial::var(&big, n);
        let g1 = (var(&fresh(name0, 1)), var(&fresh(name1, 1)));
        let g2 = (var(&fresh(name0, 2)), var(&fresh(name1, 2)));

        let embed = |images: &[(usize, Polynomial)]| -> PolyMatrix {
            let mut full: Vec<Polynomial> = (0..ctx.len())
                .map(|i| match big.index_of(ctx.name(i)) {
                    Some(j) => Polynomial::variable(&big, j),
                    None => Polynomial::zero(&big),
                })
                .collect();
            for (i, img) in images {
                full[*i] = img.clone();
            }
            self.matrix
                .map_entries(&big, |e| e.compose(&big, &full))
                .expect("parameter embedding")
        };

        let m1 = embed(&[(p0, g1.0.clone()), (p1, g1.1.clone())]);
        let m2 = embed(&[(p0, g2.0.clone()), (p1, g2.1.clone())]);
        let product = m1.matmul(&m2);

        let composed_params: (Polynomial, Polynomial) = match law {
            CompositionLaw::Additive => (&g1.0 + &g2.0, &g1.1 + &g2.1),
            CompositionLaw::SemidirectTwisted => {
                let t1_inv = var(&format!("{name1}__1_inv"));
                (&g1.0 + &(&t1_inv * &g2.0), &g1.1 * &g2.1)
            }
            CompositionLaw::SemidirectUntwisted => (&g1.0 + &g2.0, &g1.1 * &g2.1),
        };
        let composed = embed(&[(p0, composed_params.0), (p1, composed_params.1)]);

        let inverse_pair = if needs_inverse {
            let s = big.index_of(&format!("{name1}__1_inv")).unwrap();
            let t = big.index_of(&fresh(name1, 1)).unwrap();
            Some((s, t))
        } else {
            None
        };

        let cmp = product.projectively_equal(&composed, inverse_pair);
        LawCheck {
            holds: cmp.equal,
            law,
            scalar: cmp.scalar,
            offending: cmp.offending,
            product,
            composed,
        }
    }
}

/// Pull a polynomial back along a matrix action: substitute x_i -> (M x)_i.
pub fn act_on_polynomial(matrix: &PolyMatrix, f: &Polynomial) -> Result<Polynomial> {
    let ctx = f.context();
    if !Arc::ptr_eq(matrix.context(), ctx) && matrix.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    let n = ctx.n_coordinates();
    if matrix.n_rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: matrix.n_rows(),
        });
    }
    if !f.homogeneity().is_homogeneous() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let coords: Vec<Polynomial> = (0..n).map(|i| Polynomial::variable(ctx, i)).collect();
    let rows = matrix.apply(&coords);
    let sigma: Vec<(&str, Polynomial)> = (0..n).map(|i| (ctx.name(i), rows[i].clone())).collect();
    f.substitute(&sigma)
}

/// Outcome of a group-law check.
#[derive(Debug, Clone)]
pub struct LawCheck {
    pub holds: bool,
    pub law: CompositionLaw,
    /// The common scalar (numerator, denominator) when the law holds.
    pub scalar: Option<(Polynomial, Polynomial)>,
    /// First offending entry pair when it does not.
    pub offending: Option<((usize, usize), (usize, usize))>,
    /// Product matrix M(g1) * M(g2) over the doubled parameter context.
    pub product: PolyMatrix,
    /// Matrix of the composed element over the same context.
    pub composed: PolyMatrix,
}

fn is_scalar_matrix(m: &PolyMatrix) -> bool {
    let n = m.n_rows();
    if n == 0 {
        return true;
    }
    let diag = m.get(0, 0);
    if diag.is_zero() {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                if m.get(i, j) != diag {
                    return false;
                }
            } else if !m.get(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::poly::rat;

    #[test]
    fn tau_satisfies_the_additive_law() {
        let tau = models::tau();
        let check = tau.check_group_law();
        assert!(check.holds);
        // scalar is exactly 1
        let (num, den) = check.scalar.unwrap();
        assert_eq!(num, den);
    }

    #[test]
    fn rho_satisfies_the_additive_law() {
        let rho = models::rho();
        assert!(rho.check_group_law().holds);
        // entry (2,0) of the product expands to (b1+b2) + (a1+a2)^2/2
        let check = rho.check_group_law();
        let ctx = check.product.context().clone();
        let a1 = Polynomial::var(&ctx, "a__1");
        let a2 = Polynomial::var(&ctx, "a__2");
        let b1 = Polynomial::var(&ctx, "b__1");
        let b2 = Polynomial::var(&ctx, "b__2");
        let expected = &(&b1 + &b2) + &(&(&a1 + &a2) * &(&a1 + &a2)).scale(&crate::poly::ratio(1, 2));
        assert_eq!(*check.product.get(2, 0), expected);
    }

    #[test]
    fn perturbed_tau_fails_at_the_perturbed_entry() {
        let tau = models::tau();
        let ctx = tau.context().clone();
        let a = Polynomial::var(&ctx, "a");
        let mut m = tau.matrix().clone();
        m.set(1, 0, &a * &a);
        let bad = Representation::new("tau_perturbed", GroupKind::Additive2, m, tau.group_params())
            .unwrap();
        let check = bad.check_group_law();
        assert!(!check.holds);
        assert!(check.offending.is_some());
    }

    #[test]
    fn semidirect_law_needs_the_twist() {
        let rep = models::a3a1_representation();
        assert!(rep.check_group_law().holds);
        assert!(rep
            .check_group_law_with(CompositionLaw::SemidirectTwisted)
            .holds);
        assert!(!rep
            .check_group_law_with(CompositionLaw::SemidirectUntwisted)
            .holds);
    }

    #[test]
    fn act_on_polynomial_matches_rows() {
        let tau = models::tau();
        let ctx = tau.context().clone();
        let x0 = Polynomial::var(&ctx, "x0");
        let x1 = Polynomial::var(&ctx, "x1");
        let a = Polynomial::var(&ctx, "a");
        assert_eq!(tau.act_on_polynomial(&x0).unwrap(), x0);
        assert_eq!(tau.act_on_polynomial(&x1).unwrap(), &(&a * &x0) + &x1);
        // non-homogeneous input is rejected
        let bad = &x0.pow(2) + &x1;
        assert!(tau.act_on_polynomial(&bad).is_err());
    }

    #[test]
    fn specialization_at_identity_is_identity() {
        let tau = models::tau();
        let at_id = tau.specialize_pair(&(rat(0), rat(0)));
        assert_eq!(at_id, PolyMatrix::identity(tau.context(), 3));
    }
}
