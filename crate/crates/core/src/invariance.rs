//! Invariance, equivariance and fixed-locus checks.
//!
//! All decisions are exact symbolic identities over the fraction field of
//! the parameter ring: a claim "for general parameter values" is tested at
//! the generic point, never by sampling. Ideal membership uses graded-piece
//! linear algebra — the actions are coordinate-linear, so the degree-d piece
//! of a homogeneous ideal is spanned by the monomial multiples of the
//! generators and no Groebner machinery is needed.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{LinearSystem, ProjectiveLine, ProjectivePoint, SurfaceModel};
use crate::matrix::{self, PolyMatrix};
use crate::poly::{coordinate_monomials, Homogeneity, Monomial, Polynomial, Rat, VariableContext};
use crate::rep::{act_on_polynomial, Representation};

// ---------------------------------------------------------------------------
// ideal invariance
// ---------------------------------------------------------------------------

/// Membership data for the image of one generator.
#[derive(Debug, Clone)]
pub struct GeneratorMembership {
    pub generator: usize,
    pub in_ideal: bool,
    /// Expression of the image as a combination sum(coeff * monomial * g_j),
    /// available when the span matrix is constant (it always is for the
    /// shipped models). Entries: (generator index, monomial, coefficient).
    pub combination: Option<Vec<(usize, Monomial, Polynomial)>>,
}

/// Outcome of an ideal-invariance check.
#[derive(Debug, Clone)]
pub struct IdealInvariance {
    pub invariant: bool,
    pub memberships: Vec<GeneratorMembership>,
    /// Index of the first generator whose image left the ideal.
    pub failing_generator: Option<usize>,
}

/// Test whether the surface ideal is carried into itself by the action.
pub fn ideal_invariant(surface: &SurfaceModel, rep: &Representation) -> Result<IdealInvariance> {
    if rep.dimension() != surface.context().n_coordinates() {
        return Err(Error::DimensionMismatch {
            expected: surface.context().n_coordinates(),
            found: rep.dimension(),
        });
    }
    ideal_invariant_under(surface.context(), surface.generators(), rep.matrix())
}

/// Matrix-level core of the ideal-invariance test, also used with
/// specialized (constant) action matrices.
pub fn ideal_invariant_under(
    ctx: &Arc<VariableContext>,
    generators: &[Polynomial],
    action: &PolyMatrix,
) -> Result<IdealInvariance> {
    let mut memberships = Vec::new();
    let mut failing = None;
    for (gi, g) in generators.iter().enumerate() {
        let degree = match g.homogeneity() {
            Homogeneity::Homogeneous(d) => d,
            _ => return Err(Error::NotHomogeneous(g.to_string())),
        };
        let image = act_on_polynomial(action, g)?;
        let membership = graded_piece_membership(ctx, generators, degree, &image)?;
        let ok = membership.in_ideal;
        memberships.push(GeneratorMembership {
            generator: gi,
            ..membership
        });
        if !ok && failing.is_none() {
            failing = Some(gi);
        }
    }
    Ok(IdealInvariance {
        invariant: failing.is_none(),
        memberships,
        failing_generator: failing,
    })
}

/// Decide membership of `f` in the degree-d graded piece of the ideal by a
/// rank comparison over the fraction field of the parameter ring, and
/// extract combination coefficients when the span has rational entries.
fn graded_piece_membership(
    ctx: &Arc<VariableContext>,
    generators: &[Polynomial],
    degree: u32,
    f: &Polynomial,
) -> Result<GeneratorMembership> {
    let monos = coordinate_monomials(ctx, degree);
    let col_of: std::collections::BTreeMap<&Monomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // span of the graded piece: monomial multiples of the generators
    let mut span_rows: Vec<Vec<Polynomial>> = Vec::new();
    let mut provenance: Vec<(usize, Monomial)> = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        let gdeg = match g.homogeneity() {
            Homogeneity::Homogeneous(d) => d,
            _ => return Err(Error::NotHomogeneous(g.to_string())),
        };
        if gdeg > degree {
            continue;
        }
        for m in coordinate_monomials(ctx, degree - gdeg) {
            let product = g * &Polynomial::term(ctx, Rat::one(), &mono_pairs(&m));
            span_rows.push(coefficient_row(&product, &monos, &col_of));
            provenance.push((gi, m));
        }
    }
    let image_row = coefficient_row(f, &monos, &col_of);

    let span = PolyMatrix::from_rows(ctx, span_rows.clone());
    let rank_span = span.rank_over_fractions();
    let mut stacked_rows = span_rows.clone();
    stacked_rows.push(image_row.clone());
    let rank_stacked = PolyMatrix::from_rows(ctx, stacked_rows).rank_over_fractions();
    let in_ideal = rank_span == rank_stacked;

    // combination certificate over Q when the span is constant
    let combination = if in_ideal && span_rows.iter().flatten().all(|p| p.is_constant()) {
        let qrows: Vec<Vec<Rat>> = span_rows
            .iter()
            .map(|r| r.iter().map(|p| p.as_constant().unwrap()).collect())
            .collect();
        reduce_against(&qrows, &image_row, ctx).map(|coeffs_by_row| {
            coeffs_by_row
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(row, c)| {
                    let (gi, m) = provenance[row].clone();
                    (gi, m, c)
                })
                .collect()
        })
    } else {
        None
    };

    Ok(GeneratorMembership {
        generator: usize::MAX,
        in_ideal,
        combination,
    })
}

fn mono_pairs(m: &Monomial) -> Vec<(usize, u32)> {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (i, e))
        .collect()
}

fn coefficient_row(
    f: &Polynomial,
    monos: &[Monomial],
    col_of: &std::collections::BTreeMap<&Monomial, usize>,
) -> Vec<Polynomial> {
    let ctx = f.context();
    let mut row = vec![Polynomial::zero(ctx); monos.len()];
    for (coord, coeff) in f.coordinate_coefficients() {
        let col = *col_of
            .get(&coord)
            .expect("image degree matches the graded piece");
        row[col] = coeff;
    }
    row
}

/// Express a parameter-polynomial vector in terms of rational rows; returns
/// the per-row coefficients when the remainder is exactly zero.
fn reduce_against(
    qrows: &[Vec<Rat>],
    vector: &[Polynomial],
    ctx: &Arc<VariableContext>,
) -> Option<Vec<Polynomial>> {
    let red = matrix::rref(qrows);
    let mut rem: Vec<Polynomial> = vector.to_vec();
    let mut reduced_coeffs: Vec<Polynomial> = vec![Polynomial::zero(ctx); red.rows.len()];
    for (r, &c) in red.pivots.iter().enumerate() {
        let coeff = rem[c].clone();
        if coeff.is_zero() {
            continue;
        }
        for (k, entry) in rem.iter_mut().enumerate() {
            let delta = coeff.scale(&red.rows[r][k]);
            *entry = &*entry - &delta;
        }
        reduced_coeffs[r] = coeff;
    }
    if rem.iter().any(|p| !p.is_zero()) {
        return None;
    }
    // translate combinations of reduced rows back to the original rows
    let mut by_row = vec![Polynomial::zero(ctx); qrows.len()];
    for (r, coeff) in reduced_coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for (orig, t) in red.transform[r].iter().enumerate() {
            if !t.is_zero() {
                by_row[orig] = &by_row[orig] + &coeff.scale(t);
            }
        }
    }
    Some(by_row)
}

// ---------------------------------------------------------------------------
// linear system invariance
// ---------------------------------------------------------------------------

/// Outcome of a linear-system invariance check.
#[derive(Debug, Clone, Copy)]
pub struct SystemInvariance {
    pub invariant: bool,
    /// Rank of the matrix stacking the basis rows and their image rows.
    pub rank: usize,
    pub dim: usize,
}

/// The system is invariant exactly when stacking its coefficient rows with
/// the image coefficient rows does not raise the rank over the parameter
/// fraction field.
pub fn linear_system_invariant(
    system: &LinearSystem,
    action: &PolyMatrix,
) -> Result<SystemInvariance> {
    let ctx = system.context();
    if action.n_rows() != ctx.n_coordinates() {
        return Err(Error::DimensionMismatch {
            expected: ctx.n_coordinates(),
            found: action.n_rows(),
        });
    }
    let monos = coordinate_monomials(ctx, system.degree());
    let col_of: std::collections::BTreeMap<&Monomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(2 * system.dim());
    for f in system.basis() {
        rows.push(coefficient_row(f, &monos, &col_of));
    }
    for f in system.basis() {
        let image = act_on_polynomial(action, f)?;
        rows.push(coefficient_row(&image, &monos, &col_of));
    }
    let rank = PolyMatrix::from_rows(ctx, rows).rank_over_fractions();
    Ok(SystemInvariance {
        invariant: rank == system.dim(),
        rank,
        dim: system.dim(),
    })
}

/// Representation-level wrapper.
pub fn linear_system_invariant_under(
    system: &LinearSystem,
    rep: &Representation,
) -> Result<SystemInvariance> {
    linear_system_invariant(system, rep.matrix())
}

// ---------------------------------------------------------------------------
// conjugation
// ---------------------------------------------------------------------------

/// Conjugate the standard translation action by a plane automorphism fixing
/// the line {x0 = 0}: returns A * tau(a,b) * A^-1, simplified to polynomial
/// entries by exact division by det(A).
///
/// `A` must be 3x3 with first row (1, 0, 0) and invertible lower-right
/// block; its entries may be rational constants or fresh parameters. The
/// result is verified to be unipotent lower-triangular with first column
/// (1, a11*a + a12*b, a21*a + a22*b).
pub fn conjugated_tau(a_mat: &PolyMatrix) -> Result<Representation> {
    let ctx = a_mat.context().clone();
    if a_mat.n_rows() != 3 || a_mat.n_cols() != 3 {
        return Err(Error::BadMatrixShape(format!(
            "conjugation needs a 3x3 matrix, got {}x{}",
            a_mat.n_rows(),
            a_mat.n_cols()
        )));
    }
    let one = Polynomial::one(&ctx);
    if *a_mat.get(0, 0) != one || !a_mat.get(0, 1).is_zero() || !a_mat.get(0, 2).is_zero() {
        return Err(Error::BadMatrixShape(
            "conjugation needs first row (1, 0, 0)".into(),
        ));
    }
    for entry in [a_mat.get(1, 1), a_mat.get(1, 2), a_mat.get(2, 1), a_mat.get(2, 2)] {
        if !entry.is_parameter_only() {
            return Err(Error::BadMatrixShape(
                "conjugating matrix entries must be coordinate-free".into(),
            ));
        }
    }
    let block_det = &(a_mat.get(1, 1) * a_mat.get(2, 2)) - &(a_mat.get(1, 2) * a_mat.get(2, 1));
    if block_det.is_zero() {
        return Err(Error::BadMatrixShape(
            "lower-right block of the conjugating matrix is singular".into(),
        ));
    }

    let a = Polynomial::var(&ctx, "a");
    let b = Polynomial::var(&ctx, "b");
    let zero = Polynomial::zero(&ctx);
    let tau = PolyMatrix::from_rows(
        &ctx,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![a.clone(), one.clone(), zero.clone()],
            vec![b.clone(), zero.clone(), one.clone()],
        ],
    );

    let inv = a_mat.inverse()?;
    let numerator = a_mat.matmul(&tau).matmul(&inv.adjugate);
    let conj = numerator.map(|e| {
        e.div_exact(&inv.det)
            .expect("conjugated entries are divisible by det(A)")
    });

    // postcondition: the displayed sheared-identity form
    let a11 = a_mat.get(1, 1);
    let a12 = a_mat.get(1, 2);
    let a21 = a_mat.get(2, 1);
    let a22 = a_mat.get(2, 2);
    let expected = PolyMatrix::from_rows(
        &ctx,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![&(a11 * &a) + &(a12 * &b), one.clone(), zero.clone()],
            vec![&(a21 * &a) + &(a22 * &b), zero.clone(), one.clone()],
        ],
    );
    if conj != expected {
        return Err(Error::InvalidModel(
            "conjugated action does not have the sheared-identity form".into(),
        ));
    }

    let pa = ctx.index_of("a").expect("context provides parameter a");
    let pb = ctx.index_of("b").expect("context provides parameter b");
    Representation::new("tau_conjugated", crate::rep::GroupKind::Additive2, conj, [pa, pb])
}

// ---------------------------------------------------------------------------
// generic unipotent obstruction
// ---------------------------------------------------------------------------

/// Verdict of the generic-unipotent obstruction analysis.
#[derive(Debug, Clone)]
pub enum Obstruction {
    /// All obstruction coefficients vanish identically.
    Invariant,
    /// Some obstruction coefficient is a nonzero rational times a single
    /// monomial in the unipotent entries; it is nonzero at every
    /// specialization with all entries nonzero, which rules out every
    /// lower-triangular structure with nonvanishing subdiagonal.
    Certificate {
        /// Index of the basis member whose image leaves the system.
        basis_index: usize,
        /// The coordinate monomial carrying the obstruction.
        monomial: Monomial,
        /// The pure-monomial coefficient.
        coefficient: Polynomial,
    },
    /// Obstructions exist but none is a pure monomial; no universal
    /// conclusion is drawn.
    Inconclusive,
}

/// Names of the generic below-diagonal unipotent entries.
pub const UNIPOTENT_PARAMS: [&str; 3] = ["u21", "u31", "u32"];

/// Context for the generic unipotent family over the system's coordinates.
pub fn unipotent_context(system: &LinearSystem) -> Result<Arc<VariableContext>> {
    let ctx = system.context();
    if ctx.n_coordinates() != 3 {
        return Err(Error::BadMatrixShape(format!(
            "unipotent obstruction needs 3 coordinates, got {}",
            ctx.n_coordinates()
        )));
    }
    let coords: Vec<&str> = ctx.coordinate_names().iter().map(|s| s.as_str()).collect();
    Ok(VariableContext::new(&coords, &UNIPOTENT_PARAMS))
}

/// The generic lower-triangular unipotent matrix over the given context.
pub fn generic_unipotent(ctx: &Arc<VariableContext>) -> PolyMatrix {
    let one = Polynomial::one(ctx);
    let zero = Polynomial::zero(ctx);
    let u21 = Polynomial::var(ctx, "u21");
    let u31 = Polynomial::var(ctx, "u31");
    let u32 = Polynomial::var(ctx, "u32");
    PolyMatrix::from_rows(
        ctx,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![u21, one.clone(), zero.clone()],
            vec![u31, u32, one],
        ],
    )
}

/// A rational specialization of the unipotent family, over the system's own
/// (parameter-free is fine) context.
pub fn unipotent_element(
    ctx: &Arc<VariableContext>,
    u21: Rat,
    u31: Rat,
    u32: Rat,
) -> PolyMatrix {
    let c = |r: Rat| Polynomial::constant(ctx, r);
    let one = Polynomial::one(ctx);
    let zero = Polynomial::zero(ctx);
    PolyMatrix::from_rows(
        ctx,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![c(u21), one.clone(), zero.clone()],
            vec![c(u31), c(u32), one],
        ],
    )
}

/// Compute the obstruction coefficients of the system under the generic
/// unipotent family: the coordinates of each image basis member transverse
/// to the span of the system.
///
/// The system must live in 3 coordinates ordered so that the invariant line
/// is {first coordinate = 0} and the fixed point is (0:0:1).
pub fn generic_unipotent_obstruction(system: &LinearSystem) -> Result<Obstruction> {
    let uctx = unipotent_context(system)?;
    let u = generic_unipotent(&uctx);
    let basis: Vec<Polynomial> = system
        .basis()
        .iter()
        .map(|f| f.map_to(&uctx))
        .collect::<Result<_>>()?;

    let monos = coordinate_monomials(&uctx, system.degree());
    let col_of: std::collections::BTreeMap<&Monomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let qrows: Vec<Vec<Rat>> = basis
        .iter()
        .map(|f| {
            coefficient_row(f, &monos, &col_of)
                .into_iter()
                .map(|p| p.as_constant().expect("system coefficients are rational"))
                .collect()
        })
        .collect();
    let red = matrix::rref(&qrows);

    let mut certificate = None;
    let mut any_obstruction = false;
    for (bi, f) in basis.iter().enumerate() {
        let image = act_on_polynomial(&u, f)?;
        let mut rem = coefficient_row(&image, &monos, &col_of);
        for (r, &c) in red.pivots.iter().enumerate() {
            let coeff = rem[c].clone();
            if coeff.is_zero() {
                continue;
            }
            for (k, entry) in rem.iter_mut().enumerate() {
                let delta = coeff.scale(&red.rows[r][k]);
                *entry = &*entry - &delta;
            }
        }
        for (k, coeff) in rem.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            any_obstruction = true;
            if coeff.n_terms() == 1 && certificate.is_none() {
                certificate = Some(Obstruction::Certificate {
                    basis_index: bi,
                    monomial: monos[k].clone(),
                    coefficient: coeff.clone(),
                });
            }
        }
    }
    Ok(match (any_obstruction, certificate) {
        (false, _) => Obstruction::Invariant,
        (true, Some(c)) => c,
        (true, None) => Obstruction::Inconclusive,
    })
}

// ---------------------------------------------------------------------------
// fixed loci
// ---------------------------------------------------------------------------

/// True when the point is fixed identically in the parameters: all 2x2
/// minors of the 2x(n+1) array [M p ; p] vanish.
pub fn is_fixed_point(rep: &Representation, p: &ProjectivePoint) -> Result<bool> {
    if p.dim_ambient() != rep.dimension() {
        return Err(Error::DimensionMismatch {
            expected: rep.dimension(),
            found: p.dim_ambient(),
        });
    }
    let image = rep.matrix().apply_point(p.coords());
    let n = p.dim_ambient();
    for i in 0..n {
        for j in i + 1..n {
            let minor = &image[i].scale(&p.coords()[j]) - &image[j].scale(&p.coords()[i]);
            if !minor.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fixed locus of the action on an invariant line.
#[derive(Debug, Clone)]
pub enum LineFixedLocus {
    /// The line is fixed pointwise.
    All,
    /// Exactly these rational points are fixed.
    Points(Vec<ProjectivePoint>),
    /// No point with rational coordinates is fixed.
    None,
}

/// Solve the proportionality condition on the parametrized line.
///
/// The line must be invariant as a set (the images of the two spanning
/// points stay in the span; checked, error otherwise). Only fixed points
/// with rational coordinates are enumerated.
pub fn fixed_points_on_line(
    rep: &Representation,
    line: &ProjectiveLine,
) -> Result<LineFixedLocus> {
    let (alpha, beta) = restrict_to_span(rep, &line.p, &line.q)?;
    let (gamma, delta) = restrict_to_span(rep, &line.q, &line.p).map(|(d, g)| (g, d))?;

    // a point s*p + u*q is fixed iff -beta s^2 + (alpha - delta) s u + gamma u^2 = 0
    let c_s2 = -&beta;
    let c_su = &alpha - &delta;
    let c_u2 = gamma;
    if c_s2.is_zero() && c_su.is_zero() && c_u2.is_zero() {
        return Ok(LineFixedLocus::All);
    }

    // a parameter-independent root must annihilate the binary quadratic
    // attached to every parameter monomial
    let mut quadratics: std::collections::BTreeMap<Monomial, [Rat; 3]> =
        std::collections::BTreeMap::new();
    for (idx, poly) in [&c_s2, &c_su, &c_u2].into_iter().enumerate() {
        for (m, c) in poly.terms() {
            quadratics.entry(m.clone()).or_insert_with(|| {
                [Rat::zero(), Rat::zero(), Rat::zero()]
            })[idx] = c.clone();
        }
    }
    let forms: Vec<[Rat; 3]> = quadratics.into_values().collect();
    let candidates = binary_quadratic_roots(&forms[0]);
    let value = |f: &[Rat; 3], s: &Rat, u: &Rat| {
        &(&f[0] * &(s * s)) + &(&f[1] * &(s * u)) + &(&f[2] * &(u * u))
    };
    let mut fixed = Vec::new();
    for (s, u) in candidates {
        if forms.iter().all(|f| value(f, &s, &u).is_zero()) {
            let coords: Vec<Rat> = line
                .p
                .coords()
                .iter()
                .zip(line.q.coords())
                .map(|(pc, qc)| &(pc * &s) + &(qc * &u))
                .collect();
            fixed.push(ProjectivePoint::new(coords)?);
        }
    }
    // drop projective duplicates
    let mut unique: Vec<ProjectivePoint> = Vec::new();
    for pt in fixed {
        if !unique.iter().any(|u| u.eq_projective(&pt)) {
            unique.push(pt);
        }
    }
    if unique.is_empty() {
        Ok(LineFixedLocus::None)
    } else {
        Ok(LineFixedLocus::Points(unique))
    }
}

/// Write M*p as alpha*p + beta*q, failing if the image leaves the span.
fn restrict_to_span(
    rep: &Representation,
    p: &ProjectivePoint,
    q: &ProjectivePoint,
) -> Result<(Polynomial, Polynomial)> {
    let ctx = rep.context();
    let image = rep.matrix().apply_point(p.coords());
    let n = p.dim_ambient();
    // witness indices where p, q are independent
    let (i0, i1) = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            !(&p.coords()[i] * &q.coords()[j] - &p.coords()[j] * &q.coords()[i]).is_zero()
        })
        .ok_or(Error::DegenerateLine)?;
    let det = &p.coords()[i0] * &q.coords()[i1] - &p.coords()[i1] * &q.coords()[i0];
    let alpha = (&image[i0].scale(&q.coords()[i1]) - &image[i1].scale(&q.coords()[i0]))
        .scale(&det.recip());
    let beta = (&image[i1].scale(&p.coords()[i0]) - &image[i0].scale(&p.coords()[i1]))
        .scale(&det.recip());
    // membership check on all coordinates
    for k in 0..n {
        let expect = &alpha.scale(&p.coords()[k]) + &beta.scale(&q.coords()[k]);
        if image[k] != expect {
            return Err(Error::LineNotInvariant(format!(
                "image of {p} leaves the span at coordinate {k}"
            )));
        }
    }
    let _ = ctx;
    Ok((alpha, beta))
}

/// Projective rational roots of c0 s^2 + c1 s u + c2 u^2.
fn binary_quadratic_roots(f: &[Rat; 3]) -> Vec<(Rat, Rat)> {
    let [c_s2, c_su, c_u2] = f;
    let mut roots = Vec::new();
    if c_s2.is_zero() {
        // (1 : 0) and the linear root of c_su * s + c_u2 * u
        roots.push((Rat::one(), Rat::zero()));
        if !c_su.is_zero() {
            roots.push((-c_u2.clone(), c_su.clone()));
        }
        return roots;
    }
    // dehomogenize at u = 1
    let disc = &(c_su * c_su) - &(Rat::from_integer(4.into()) * c_s2 * c_u2);
    if disc.is_negative() {
        return roots;
    }
    if let Some(sq) = rational_sqrt(&disc) {
        let two_a = Rat::from_integer(2.into()) * c_s2;
        roots.push(((-c_su + &sq) / &two_a, Rat::one()));
        if !sq.is_zero() {
            roots.push(((-c_su - &sq) / &two_a, Rat::one()));
        }
    }
    roots
}

/// Exact square root of a nonnegative rational, if it exists.
fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let num = r.numer();
    let den = r.denom();
    let ns = num.sqrt();
    let ds = den.sqrt();
    if &(&ns * &ns) == num && &(&ds * &ds) == den {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// projection equivariance and line invariance
// ---------------------------------------------------------------------------

/// Verify the big action descends through the coordinate projection to the
/// small action: for generic x, projecting M_big * x equals M_small applied
/// to the projection of x, up to one scalar rational function.
pub fn projection_equivariance(
    big: &Representation,
    small: &Representation,
    coords: &[usize],
) -> Result<bool> {
    if coords.len() != small.dimension() {
        return Err(Error::DimensionMismatch {
            expected: small.dimension(),
            found: coords.len(),
        });
    }
    let ctx = big.context();
    for &i in coords {
        if i >= big.dimension() {
            return Err(Error::DimensionMismatch {
                expected: big.dimension(),
                found: i,
            });
        }
    }
    let x: Vec<Polynomial> = (0..big.dimension())
        .map(|i| Polynomial::variable(ctx, i))
        .collect();
    let big_image = big.matrix().apply(&x);
    let u: Vec<Polynomial> = coords.iter().map(|&i| big_image[i].clone()).collect();

    let small_in_big = small
        .matrix()
        .map_entries(ctx, |e| e.map_to(ctx))?;
    let projected: Vec<Polynomial> = coords.iter().map(|&i| x[i].clone()).collect();
    let v = small_in_big.apply(&projected);

    let u_mat = PolyMatrix::from_rows(ctx, vec![u]);
    let v_mat = PolyMatrix::from_rows(ctx, vec![v]);
    Ok(u_mat.projectively_equal(&v_mat, None).equal)
}

/// True when the line is invariant as a set: the images of both spanning
/// points stay in the span, identically in the parameters.
pub fn line_invariant(rep: &Representation, line: &ProjectiveLine) -> bool {
    restrict_to_span(rep, &line.p, &line.q).is_ok()
        && restrict_to_span(rep, &line.q, &line.p).is_ok()
}

/// Every listed line of the surface must be invariant as a set; together
/// with ideal invariance this identifies the complement of the lines as a
/// union of orbits.
pub fn open_orbit_complement_check(
    surface: &SurfaceModel,
    rep: &Representation,
) -> Result<bool> {
    for k in 0..surface.line_forms().len() {
        let line = surface.line(k)?;
        if !line_invariant(rep, &line) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::poly::rat;

    #[test]
    fn principal_ideal_x1_is_not_tau_invariant() {
        let tau = models::tau();
        let ctx = tau.context().clone();
        let x1 = Polynomial::var(&ctx, "x1");
        let out = ideal_invariant_under(&ctx, &[x1], tau.matrix()).unwrap();
        assert!(!out.invariant);
        assert_eq!(out.failing_generator, Some(0));
    }

    #[test]
    fn full_cubic_system_is_invariant_under_anything() {
        let tau = models::tau();
        let ctx = tau.context().clone();
        let monos = coordinate_monomials(&ctx, 3);
        let basis: Vec<Polynomial> = monos
            .iter()
            .map(|m| Polynomial::term(&ctx, Rat::one(), &super::mono_pairs(m)))
            .collect();
        let v = LinearSystem::new(basis).unwrap();
        let out = linear_system_invariant(&v, tau.matrix()).unwrap();
        assert!(out.invariant);
        assert_eq!(out.rank, 10);
    }

    #[test]
    fn conjugation_by_identity_gives_tau() {
        let ctx = VariableContext::new(&["x0", "x1", "x2"], &["a", "b"]);
        let id = PolyMatrix::identity(&ctx, 3);
        let conj = conjugated_tau(&id).unwrap();
        assert_eq!(conj.matrix(), models::tau().matrix());
    }

    #[test]
    fn conjugation_by_a_shear_gives_tau_again() {
        // A = [[1,0,0],[1,1,0],[0,0,1]] has a11=1, a12=0, a21=0, a22=1
        let ctx = VariableContext::new(&["x0", "x1", "x2"], &["a", "b"]);
        let mut a_mat = PolyMatrix::identity(&ctx, 3);
        a_mat.set(1, 0, Polynomial::one(&ctx));
        let conj = conjugated_tau(&a_mat).unwrap();
        assert_eq!(conj.matrix(), models::tau().matrix());
    }

    #[test]
    fn conjugation_rejects_bad_shapes() {
        let ctx = VariableContext::new(&["x0", "x1", "x2"], &["a", "b"]);
        let mut bad = PolyMatrix::identity(&ctx, 3);
        bad.set(0, 1, Polynomial::one(&ctx));
        assert!(conjugated_tau(&bad).is_err());
        let mut singular = PolyMatrix::identity(&ctx, 3);
        singular.set(2, 2, Polynomial::zero(&ctx));
        assert!(conjugated_tau(&singular).is_err());
    }

    #[test]
    fn tau_does_not_fix_the_affine_origin() {
        let tau = models::tau();
        let p = ProjectivePoint::from_ints(&[1, 0, 0]).unwrap();
        assert!(!is_fixed_point(&tau, &p).unwrap());
        let q = ProjectivePoint::from_ints(&[0, 1, 5]).unwrap();
        assert!(is_fixed_point(&tau, &q).unwrap());
    }

    #[test]
    fn tau_fixes_its_line_pointwise_rho_fixes_one_point() {
        let line = ProjectiveLine::new(
            ProjectivePoint::from_ints(&[0, 1, 0]).unwrap(),
            ProjectivePoint::from_ints(&[0, 0, 1]).unwrap(),
        )
        .unwrap();
        match fixed_points_on_line(&models::tau(), &line).unwrap() {
            LineFixedLocus::All => {}
            other => panic!("expected pointwise fixed line, got {other:?}"),
        }
        match fixed_points_on_line(&models::rho(), &line).unwrap() {
            LineFixedLocus::Points(pts) => {
                assert_eq!(pts.len(), 1);
                assert!(pts[0].eq_projective(&ProjectivePoint::from_ints(&[0, 0, 1]).unwrap()));
            }
            other => panic!("expected a single fixed point, got {other:?}"),
        }
    }

    #[test]
    fn non_invariant_line_is_an_error() {
        let tau = models::tau();
        // {x1 = 0} is spanned by (1:0:0) and (0:0:1); tau moves (1:0:0) off it
        let line = ProjectiveLine::new(
            ProjectivePoint::from_ints(&[1, 0, 0]).unwrap(),
            ProjectivePoint::from_ints(&[0, 0, 1]).unwrap(),
        )
        .unwrap();
        assert!(fixed_points_on_line(&tau, &line).is_err());
        assert!(!line_invariant(&tau, &line));
    }

    #[test]
    fn identity_projection_is_equivariant() {
        let tau = models::tau();
        assert!(projection_equivariance(&tau, &tau, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn unipotent_obstruction_trivial_cases() {
        let ctx = VariableContext::new(&["x0", "x2", "x3"], &[]);
        let x0 = Polynomial::var(&ctx, "x0");
        // {x0^3} alone is carried to itself by every lower unipotent
        let v = LinearSystem::new(vec![x0.pow(3)]).unwrap();
        assert!(matches!(
            generic_unipotent_obstruction(&v).unwrap(),
            Obstruction::Invariant
        ));
        // the full cubic system is invariant
        let monos = coordinate_monomials(&ctx, 3);
        let full: Vec<Polynomial> = monos
            .iter()
            .map(|m| Polynomial::term(&ctx, Rat::one(), &super::mono_pairs(m)))
            .collect();
        let v = LinearSystem::new(full).unwrap();
        assert!(matches!(
            generic_unipotent_obstruction(&v).unwrap(),
            Obstruction::Invariant
        ));
    }

    #[test]
    fn unipotent_obstruction_can_be_inconclusive() {
        // the image of x0*x1^2 - x0^2*x2 leaves the span with coefficients
        // u21^2 - u31 and 2*u21 - u32: obstructed, but no single monomial
        let ctx = VariableContext::new(&["x0", "x1", "x2"], &[]);
        let x0 = Polynomial::var(&ctx, "x0");
        let x1 = Polynomial::var(&ctx, "x1");
        let x2 = Polynomial::var(&ctx, "x2");
        let v = LinearSystem::new(vec![&(&x0 * &x1.pow(2)) - &(&x0.pow(2) * &x2)]).unwrap();
        assert!(matches!(
            generic_unipotent_obstruction(&v).unwrap(),
            Obstruction::Inconclusive
        ));
    }

    #[test]
    fn unipotent_obstruction_needs_three_coordinates() {
        let ctx = VariableContext::new(&["x0", "x1"], &[]);
        let x0 = Polynomial::var(&ctx, "x0");
        let v = LinearSystem::new(vec![x0.pow(2)]).unwrap();
        assert!(generic_unipotent_obstruction(&v).is_err());
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&crate::poly::ratio(9, 4)), Some(crate::poly::ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(0)), Some(rat(0)));
    }
}
