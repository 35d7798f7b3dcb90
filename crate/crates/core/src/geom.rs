//! Projective points and lines, linear systems, and embedded surface models.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::catalog::AdeLabel;
use crate::error::{Error, Result};
use crate::matrix::{self, PolyMatrix};
use crate::poly::{coordinate_monomials, Homogeneity, Polynomial, Rat, VariableContext};
use crate::rep::Representation;

/// Point of projective space with exact rational coordinates.
///
/// Equality is proportionality of coordinate vectors, tested by vanishing of
/// all 2x2 cross minors so no normalization is ever chosen.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    coords: Vec<Rat>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        ProjectivePoint::new(coords.iter().map(|&c| crate::poly::rat(c)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len()
    }

    pub fn eq_projective(&self, other: &ProjectivePoint) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let n = self.coords.len();
        for i in 0..n {
            for j in i + 1..n {
                if &self.coords[i] * &other.coords[j] != &self.coords[j] * &other.coords[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Line in projective space, spanned by two distinct points.
#[derive(Debug, Clone)]
pub struct ProjectiveLine {
    pub p: ProjectivePoint,
    pub q: ProjectivePoint,
}

impl ProjectiveLine {
    pub fn new(p: ProjectivePoint, q: ProjectivePoint) -> Result<Self> {
        if p.eq_projective(&q) {
            return Err(Error::DegenerateLine);
        }
        Ok(ProjectiveLine { p, q })
    }

    /// Line in the plane cut out by one linear form.
    pub fn from_plane_form(form: &Polynomial) -> Result<Self> {
        line_from_forms(form.context(), std::slice::from_ref(form))
    }
}

/// Line given by vanishing linear forms, computed via the kernel of the
/// coefficient matrix.
pub fn line_from_forms(
    ctx: &Arc<VariableContext>,
    forms: &[Polynomial],
) -> Result<ProjectiveLine> {
    let n = ctx.n_coordinates();
    let mut rows = Vec::new();
    for f in forms {
        if f.homogeneity() != Homogeneity::Homogeneous(1) || !coefficients_constant(f) {
            return Err(Error::NotALine(f.to_string()));
        }
        let mut row = vec![Rat::zero(); n];
        for (m, c) in f.terms() {
            let i = (0..n).find(|&i| m.exp(i) == 1).expect("linear form");
            row[i] = c.clone();
        }
        rows.push(row);
    }
    let kernel = matrix::nullspace(&rows);
    if kernel.len() != 2 {
        return Err(Error::NotALine(format!(
            "kernel has dimension {}, expected 2",
            kernel.len()
        )));
    }
    let mut it = kernel.into_iter();
    ProjectiveLine::new(
        ProjectivePoint::new(it.next().unwrap())?,
        ProjectivePoint::new(it.next().unwrap())?,
    )
}

fn coefficients_constant(f: &Polynomial) -> bool {
    let nc = f.context().n_coordinates();
    let nv = f.context().len();
    f.terms().all(|(m, _)| (nc..nv).all(|i| m.exp(i) == 0))
}

/// A space of homogeneous forms of one common degree, given by a basis with
/// rational coefficients.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    ctx: Arc<VariableContext>,
    degree: u32,
    basis: Vec<Polynomial>,
}

impl LinearSystem {
    /// Validates that all members are homogeneous of one degree, have
    /// parameter-free coefficients, and are linearly independent over Q.
    pub fn new(basis: Vec<Polynomial>) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| Error::InvalidModel("empty linear system".into()))?;
        let ctx = first.context().clone();
        let degree = match first.homogeneity() {
            Homogeneity::Homogeneous(d) => d,
            _ => return Err(Error::NotHomogeneous(first.to_string())),
        };
        for f in &basis {
            if f.context() != &ctx {
                return Err(Error::ContextMismatch);
            }
            if f.homogeneity() != Homogeneity::Homogeneous(degree) {
                return Err(Error::NotHomogeneous(f.to_string()));
            }
            if !coefficients_constant(f) {
                return Err(Error::InvalidModel(format!(
                    "linear system member has parameter coefficients: {f}"
                )));
            }
        }
        let monos = coordinate_monomials(&ctx, degree);
        let rows: Vec<Vec<Rat>> = basis
            .iter()
            .map(|f| monos.iter().map(|m| f.coefficient(m)).collect())
            .collect();
        if matrix::rank_q(&rows) != basis.len() {
            return Err(Error::InvalidModel(
                "linear system basis is linearly dependent".into(),
            ));
        }
        Ok(LinearSystem { ctx, degree, basis })
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Image of the negative-curve configuration in the plane: the line the
/// blown-down curves map to, plus the distinct points on it.
#[derive(Debug, Clone)]
pub struct PlaneConfiguration {
    /// Linear form cutting the distinguished line (in the plane context).
    pub line: Polynomial,
    /// The distinct points the remaining negative curves project to.
    pub points: Vec<ProjectivePoint>,
}

/// A named anticanonically embedded surface with its projection data.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    name: String,
    ctx: Arc<VariableContext>,
    generators: Vec<Polynomial>,
    /// Indices of the ambient coordinates giving the plane projection.
    projection: Vec<usize>,
    /// Basis of the system defining the inverse plane-to-surface map, one
    /// member per ambient coordinate, in the plane context.
    inverse_map: LinearSystem,
    singular_points: Vec<(ProjectivePoint, AdeLabel)>,
    /// Lines on the surface, each as the list of vanishing linear forms.
    lines: Vec<Vec<Polynomial>>,
    plane_config: Option<PlaneConfiguration>,
}

impl SurfaceModel {
    /// Validates: generators homogeneous; inverse-map members share one
    /// degree and there is one per ambient coordinate; every listed singular
    /// point satisfies all generators; every listed line lies on the surface.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        ctx: &Arc<VariableContext>,
        generators: Vec<Polynomial>,
        projection: Vec<usize>,
        inverse_map: LinearSystem,
        singular_points: Vec<(ProjectivePoint, AdeLabel)>,
        lines: Vec<Vec<Polynomial>>,
        plane_config: Option<PlaneConfiguration>,
    ) -> Result<Self> {
        let n = ctx.n_coordinates();
        for g in &generators {
            if g.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if !g.homogeneity().is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        if inverse_map.dim() != n {
            return Err(Error::InvalidModel(format!(
                "{name}: inverse map has {} members for ambient dimension {}",
                inverse_map.dim(),
                n - 1
            )));
        }
        for &i in &projection {
            if i >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: i,
                });
            }
        }
        for (p, label) in &singular_points {
            if p.dim_ambient() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.dim_ambient(),
                });
            }
            for g in &generators {
                let mut values = p.coords().to_vec();
                values.extend(std::iter::repeat_n(Rat::zero(), ctx.len() - n));
                if !g.evaluate(&values).is_zero() {
                    return Err(Error::InvalidModel(format!(
                        "{name}: singular point {p} (type {label}) is not on the surface"
                    )));
                }
            }
        }
        let model = SurfaceModel {
            name: name.to_string(),
            ctx: ctx.clone(),
            generators,
            projection,
            inverse_map,
            singular_points,
            lines,
            plane_config,
        };
        for (k, forms) in model.lines.iter().enumerate() {
            let line = line_from_forms(&model.ctx, forms)?;
            if !model.line_on_surface(&line) {
                return Err(Error::InvalidModel(format!(
                    "{name}: line #{k} does not lie on the surface"
                )));
            }
        }
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn ambient_dim(&self) -> usize {
        self.ctx.n_coordinates() - 1
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn inverse_map(&self) -> &LinearSystem {
        &self.inverse_map
    }

    pub fn singular_points(&self) -> &[(ProjectivePoint, AdeLabel)] {
        &self.singular_points
    }

    pub fn line_forms(&self) -> &[Vec<Polynomial>] {
        &self.lines
    }

    pub fn line(&self, k: usize) -> Result<ProjectiveLine> {
        line_from_forms(&self.ctx, &self.lines[k])
    }

    pub fn plane_configuration(&self) -> Option<&PlaneConfiguration> {
        self.plane_config.as_ref()
    }

    /// Whether the blown-down configuration is compatible with the second
    /// plane structure, which fixes only one point on its fixed line: true
    /// exactly when the curves project to a single point.
    pub fn rho_configuration_compatible(&self) -> Result<bool> {
        rho_configuration_compatible(
            self.plane_config
                .as_ref()
                .ok_or_else(|| Error::MissingConfiguration(self.name.clone()))?,
        )
    }

    /// Substitute the parametrization of a line into every generator and
    /// check the results vanish identically.
    pub fn line_on_surface(&self, line: &ProjectiveLine) -> bool {
        let pctx = VariableContext::new(&["s", "u"], &[]);
        let s = Polynomial::var(&pctx, "s");
        let u = Polynomial::var(&pctx, "u");
        let n = self.ctx.n_coordinates();
        let images: Vec<Polynomial> = (0..self.ctx.len())
            .map(|i| {
                if i < n {
                    &s.scale(&line.p.coords()[i]) + &u.scale(&line.q.coords()[i])
                } else {
                    Polynomial::zero(&pctx)
                }
            })
            .collect();
        self.generators
            .iter()
            .all(|g| g.compose(&pctx, &images).is_ok_and(|r| r.is_zero()))
    }

    /// Substituting the inverse system into every generator gives zero: the
    /// plane-to-surface map lands on the surface.
    pub fn inverse_map_lands_on_surface(&self) -> bool {
        let plane_ctx = self.inverse_map.context().clone();
        let basis = self.inverse_map.basis();
        let n = self.ctx.n_coordinates();
        let mut images = Vec::with_capacity(self.ctx.len());
        for i in 0..self.ctx.len() {
            if i < n {
                images.push(basis[i].clone());
            } else {
                match plane_ctx.index_of(self.ctx.name(i)) {
                    Some(j) => images.push(Polynomial::variable(&plane_ctx, j)),
                    None => images.push(Polynomial::zero(&plane_ctx)),
                }
            }
        }
        self.generators
            .iter()
            .all(|g| g.compose(&plane_ctx, &images).is_ok_and(|r| r.is_zero()))
    }

    /// The projection composed with the inverse system is the identity of
    /// the plane: the selected members are one common multiple of the plane
    /// coordinates.
    pub fn projection_inverts_inverse_map(&self) -> bool {
        let plane_ctx = self.inverse_map.context();
        let basis = self.inverse_map.basis();
        let selected: Vec<&Polynomial> = self.projection.iter().map(|&i| &basis[i]).collect();
        let coords: Vec<Polynomial> = (0..plane_ctx.n_coordinates())
            .map(|i| Polynomial::variable(plane_ctx, i))
            .collect();
        for i in 0..selected.len() {
            for j in i + 1..selected.len() {
                let cross = &(selected[i] * &coords[j]) - &(selected[j] * &coords[i]);
                if !cross.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The action matrix restricted to the plane coordinates: submatrix of
    /// the representation on the projection indices.
    pub fn projection_of(&self, rep: &Representation) -> PolyMatrix {
        let rows: Vec<Vec<Polynomial>> = self
            .projection
            .iter()
            .map(|&i| {
                self.projection
                    .iter()
                    .map(|&j| rep.matrix().get(i, j).clone())
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rep.context(), rows)
    }
}

/// The combinatorial half of the exclusion for the second plane structure:
/// a compatible configuration projects the blown-down curves to exactly one
/// point of the fixed line.
pub fn rho_configuration_compatible(config: &PlaneConfiguration) -> Result<bool> {
    if config.points.is_empty() {
        return Err(Error::MissingConfiguration("no blown-up points".into()));
    }
    Ok(config.points.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn projective_equality_ignores_scaling() {
        let p = ProjectivePoint::from_ints(&[1, 2, 3]).unwrap();
        let q = ProjectivePoint::new(vec![rat(2), rat(4), rat(6)]).unwrap();
        let r = ProjectivePoint::from_ints(&[1, 2, 4]).unwrap();
        assert!(p.eq_projective(&q));
        assert!(!p.eq_projective(&r));
        assert!(ProjectivePoint::from_ints(&[0, 0, 0]).is_err());
    }

    #[test]
    fn line_from_vanishing_forms() {
        let ctx = VariableContext::new(&["x0", "x1", "x2", "x3", "x4"], &[]);
        let forms = vec![
            Polynomial::var(&ctx, "x0"),
            Polynomial::var(&ctx, "x2"),
            Polynomial::var(&ctx, "x3"),
        ];
        let line = line_from_forms(&ctx, &forms).unwrap();
        // spanned by e1 and e4
        for pt in [&line.p, &line.q] {
            assert!(pt.coords()[0].is_zero());
            assert!(pt.coords()[2].is_zero());
            assert!(pt.coords()[3].is_zero());
        }
        assert!(!line.p.eq_projective(&line.q));
    }

    #[test]
    fn linear_system_rejects_dependent_basis() {
        let ctx = VariableContext::new(&["x0", "x1", "x2"], &[]);
        let x0 = Polynomial::var(&ctx, "x0");
        let x1 = Polynomial::var(&ctx, "x1");
        let dependent = vec![x0.pow(3), x0.pow(2) * &x1, &x0.pow(3) + &(x0.pow(2) * &x1)];
        assert!(LinearSystem::new(dependent).is_err());
        let mixed = vec![x0.pow(3), x0.pow(2)];
        assert!(LinearSystem::new(mixed).is_err());
    }

    #[test]
    fn rho_compatibility_counts_points() {
        let one = PlaneConfiguration {
            line: Polynomial::var(&VariableContext::new(&["x0", "x1", "x2"], &[]), "x0"),
            points: vec![ProjectivePoint::from_ints(&[0, 0, 1]).unwrap()],
        };
        assert!(rho_configuration_compatible(&one).unwrap());
        let two = PlaneConfiguration {
            points: vec![
                ProjectivePoint::from_ints(&[0, 0, 1]).unwrap(),
                ProjectivePoint::from_ints(&[0, 1, 0]).unwrap(),
            ],
            ..one
        };
        assert!(!rho_configuration_compatible(&two).unwrap());
    }
}
