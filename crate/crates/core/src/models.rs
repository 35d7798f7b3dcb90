//! The embedded surface models, group representations and plane actions.
//!
//! Every matrix here is the pushforward of a plane action through the
//! inverse map of the surface's plane projection, so the ideal-invariance,
//! descent and fixed-locus checks all run against one consistent set of
//! conventions: a matrix acts on points by x -> M x and on polynomials by
//! pulling back along the same substitution.

use std::sync::Arc;

use crate::catalog::AdeLabel;
use crate::geom::{LinearSystem, PlaneConfiguration, ProjectivePoint, SurfaceModel};
use crate::matrix::PolyMatrix;
use crate::poly::{rat, ratio, Polynomial, VariableContext};
use crate::rep::{GroupKind, Representation};

fn var(ctx: &Arc<VariableContext>, n: &str) -> Polynomial {
    Polynomial::var(ctx, n)
}

fn c(ctx: &Arc<VariableContext>, n: i64) -> Polynomial {
    Polynomial::constant(ctx, rat(n))
}

fn additive_rep(name: &str, ctx: &Arc<VariableContext>, rows: Vec<Vec<Polynomial>>) -> Representation {
    let pa = ctx.index_of("a").expect("parameter a");
    let pb = ctx.index_of("b").expect("parameter b");
    Representation::new(name, GroupKind::Additive2, PolyMatrix::from_rows(ctx, rows), [pa, pb])
        .expect("embedded representation is well-formed")
}

fn semidirect_rep(
    name: &str,
    ctx: &Arc<VariableContext>,
    rows: Vec<Vec<Polynomial>>,
) -> Representation {
    let pb = ctx.index_of("b").expect("parameter b");
    let pt = ctx.index_of("t").expect("parameter t");
    Representation::new(
        name,
        GroupKind::SemidirectGaGm,
        PolyMatrix::from_rows(ctx, rows),
        [pb, pt],
    )
    .expect("embedded representation is well-formed")
}

/// Standard plane context: coordinates (x0, x1, x2), parameters (a, b).
pub fn plane_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x1", "x2"], &["a", "b"])
}

/// The translation action fixing the line {x0 = 0} pointwise.
pub fn tau() -> Representation {
    tau_on(&plane_context())
}

/// The translation action over any 3-coordinate context with parameters a, b.
pub fn tau_on(ctx: &Arc<VariableContext>) -> Representation {
    assert_eq!(ctx.n_coordinates(), 3, "translation action lives on the plane");
    let a = var(ctx, "a");
    let b = var(ctx, "b");
    let one = c(ctx, 1);
    let zero = c(ctx, 0);
    additive_rep(
        "tau",
        ctx,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![a, one.clone(), zero.clone()],
            vec![b, zero, one],
        ],
    )
}

/// The second plane structure: fixes {x0 = 0} as a set but only the point
/// (0:0:1) on it.
pub fn rho() -> Representation {
    let ctx = plane_context();
    let a = var(&ctx, "a");
    let b = var(&ctx, "b");
    let one = c(&ctx, 1);
    let zero = c(&ctx, 0);
    let half_a2 = (&a * &a).scale(&ratio(1, 2));
    additive_rep(
        "rho",
        &ctx,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![a.clone(), one.clone(), zero.clone()],
            vec![&b + &half_a2, a, one],
        ],
    )
}

// ---------------------------------------------------------------------------
// degree 4, one D5 singularity
// ---------------------------------------------------------------------------

fn d5_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x1", "x2", "x3", "x4"], &["a", "b"])
}

fn d5_plane_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x2", "x3"], &["a", "b"])
}

/// The quartic with a D5 singularity, its projection from the plane
/// (x0 : x2 : x3), and the cubic system inverting the projection.
pub fn d5_surface() -> SurfaceModel {
    let ctx = d5_context();
    let [x0, x1, x2, x3, x4] =
        ["x0", "x1", "x2", "x3", "x4"].map(|n| var(&ctx, n));
    let g1 = &(&x0 * &x1) - &(&x2 * &x2);
    let g2 = &(&(&x0 * &x4) - &(&x1 * &x2)) + &(&x3 * &x3);

    let p = d5_plane_context();
    let [y0, y1, y2] = ["x0", "x2", "x3"].map(|n| var(&p, n));
    let inverse = LinearSystem::new(vec![
        y0.pow(3),
        &y0 * &(&y1 * &y1),
        &(&y0 * &y0) * &y1,
        &(&y0 * &y0) * &y2,
        &y1.pow(3) - &(&y0 * &(&y2 * &y2)),
    ])
    .expect("inverse system of the D5 quartic");

    SurfaceModel::new(
        "d5_quartic",
        &ctx,
        vec![g1, g2],
        vec![0, 2, 3],
        inverse,
        vec![(
            ProjectivePoint::from_ints(&[0, 0, 0, 0, 1]).unwrap(),
            AdeLabel::D(5),
        )],
        vec![vec![x0.clone(), x2.clone(), x3.clone()]],
        Some(PlaneConfiguration {
            line: var(&p, "x0"),
            points: vec![ProjectivePoint::from_ints(&[0, 0, 1]).unwrap()],
        }),
    )
    .expect("D5 quartic model data")
}

/// The additive action on the D5 quartic induced by the translation action
/// on the plane through the inverse cubic system.
pub fn d5_representation() -> Representation {
    let ctx = d5_context();
    let a = var(&ctx, "a");
    let b = var(&ctx, "b");
    let one = c(&ctx, 1);
    let zero = c(&ctx, 0);
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let b2 = &b * &b;
    additive_rep(
        "d5",
        &ctx,
        vec![
            vec![one.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            vec![a2.clone(), one.clone(), a.scale(&rat(2)), zero.clone(), zero.clone()],
            vec![a.clone(), zero.clone(), one.clone(), zero.clone(), zero.clone()],
            vec![b.clone(), zero.clone(), zero.clone(), one.clone(), zero.clone()],
            vec![
                &a3 - &b2,
                a.scale(&rat(3)),
                a2.scale(&rat(3)),
                b.scale(&rat(-2)),
                one,
            ],
        ],
    )
}

/// The translation action on the projection plane of the D5 quartic.
pub fn d5_plane_action() -> Representation {
    tau_on(&d5_plane_context())
}

// ---------------------------------------------------------------------------
// degree 5, one A3 singularity
// ---------------------------------------------------------------------------

fn a3_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x1", "x2", "x3", "x4", "x5"], &["a", "b"])
}

/// The quintic with an A3 singularity, projected from (x0 : x1 : x4).
pub fn a3_surface() -> SurfaceModel {
    let ctx = a3_context();
    let [x0, x1, x2, x3, x4, x5] =
        ["x0", "x1", "x2", "x3", "x4", "x5"].map(|n| var(&ctx, n));
    let generators = vec![
        &(&x0 * &x2) - &(&x1 * &x1),
        &(&x0 * &x3) - &(&x1 * &x4),
        &(&x2 * &x4) - &(&x1 * &x3),
        &(&(&x2 * &x4) + &(&x4 * &x4)) + &(&x0 * &x5),
        &(&(&x2 * &x3) + &(&x3 * &x4)) + &(&x1 * &x5),
    ];

    let p = VariableContext::new(&["x0", "x1", "x4"], &["a", "b"]);
    let [y0, y1, y2] = ["x0", "x1", "x4"].map(|n| var(&p, n));
    let inverse = LinearSystem::new(vec![
        y0.pow(3),
        &(&y0 * &y0) * &y1,
        &y0 * &(&y1 * &y1),
        &(&y0 * &y1) * &y2,
        &(&y0 * &y0) * &y2,
        -(&(&(&y1 * &y1) * &y2) + &(&y0 * &(&y2 * &y2))),
    ])
    .expect("inverse system of the A3 quintic");

    SurfaceModel::new(
        "a3_quintic",
        &ctx,
        generators,
        vec![0, 1, 4],
        inverse,
        vec![(
            ProjectivePoint::from_ints(&[0, 0, 0, 0, 0, 1]).unwrap(),
            AdeLabel::A(3),
        )],
        vec![
            vec![x0.clone(), x1.clone(), x2.clone(), x4.clone()],
            vec![x0.clone(), x1.clone(), x3.clone(), x4.clone()],
        ],
        None,
    )
    .expect("A3 quintic model data")
}

/// The additive action on the A3 quintic induced by the plane translation.
pub fn a3_representation() -> Representation {
    let ctx = a3_context();
    let a = var(&ctx, "a");
    let b = var(&ctx, "b");
    let one = c(&ctx, 1);
    let zero = c(&ctx, 0);
    let a2 = &a * &a;
    additive_rep(
        "a3",
        &ctx,
        vec![
            vec![
                one.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
            ],
            vec![
                a.clone(),
                one.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
            ],
            vec![
                a2.clone(),
                a.scale(&rat(2)),
                one.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
            ],
            vec![
                &a * &b,
                b.clone(),
                zero.clone(),
                one.clone(),
                a.clone(),
                zero.clone(),
            ],
            vec![
                b.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                one.clone(),
                zero.clone(),
            ],
            vec![
                -(&(&a2 * &b) + &(&b * &b)),
                (&a * &b).scale(&rat(-2)),
                -b.clone(),
                a.scale(&rat(-2)),
                -(&a2 + &b.scale(&rat(2))),
                one,
            ],
        ],
    )
}

/// The translation action on the projection plane of the A3 quintic.
pub fn a3_plane_action() -> Representation {
    tau_on(&VariableContext::new(&["x0", "x1", "x4"], &["a", "b"]))
}

// ---------------------------------------------------------------------------
// degree 4, A3 + A1 singularities, semidirect action
// ---------------------------------------------------------------------------

fn a3a1_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x1", "x2", "x3", "x4"], &["b", "t"])
}

fn a3a1_plane_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x1", "x2"], &["b", "t"])
}

/// The quartic with A3 + A1 singularities, projected from (x0 : x1 : x2).
pub fn a3a1_surface() -> SurfaceModel {
    let ctx = a3a1_context();
    let [x0, x1, x2, x3, x4] =
        ["x0", "x1", "x2", "x3", "x4"].map(|n| var(&ctx, n));
    let g1 = &(&(&x0 * &x0) + &(&x0 * &x3)) + &(&x2 * &x4);
    let g2 = &(&x1 * &x3) - &(&x2 * &x2);

    let p = a3a1_plane_context();
    let [y0, y1, y2] = ["x0", "x1", "x2"].map(|n| var(&p, n));
    let inverse = LinearSystem::new(vec![
        &(&y0 * &y1) * &y2,
        &(&y1 * &y1) * &y2,
        &y1 * &(&y2 * &y2),
        y2.pow(3),
        -(&y0 * &(&(&y2 * &y2) + &(&y0 * &y1))),
    ])
    .expect("inverse system of the A3+A1 quartic");

    SurfaceModel::new(
        "a3a1_quartic",
        &ctx,
        vec![g1, g2],
        vec![0, 1, 2],
        inverse,
        vec![
            (
                ProjectivePoint::from_ints(&[0, 0, 0, 0, 1]).unwrap(),
                AdeLabel::A(3),
            ),
            (
                ProjectivePoint::from_ints(&[0, 1, 0, 0, 0]).unwrap(),
                AdeLabel::A(1),
            ),
        ],
        vec![
            vec![x0.clone(), x1.clone(), x2.clone()],
            vec![&x0 + &x3, x1.clone(), x2.clone()],
            vec![x0.clone(), x2.clone(), x3.clone()],
        ],
        None,
    )
    .expect("A3+A1 quartic model data")
}

/// The semidirect action on the A3+A1 quartic, stored after projective
/// rescaling by t so the entries are polynomial in (b, t).
pub fn a3a1_representation() -> Representation {
    let ctx = a3a1_context();
    let b = var(&ctx, "b");
    let t = var(&ctx, "t");
    let one = c(&ctx, 1);
    let zero = c(&ctx, 0);
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    semidirect_rep(
        "a3a1",
        &ctx,
        vec![
            vec![t.clone(), zero.clone(), &b * &t2, zero.clone(), zero.clone()],
            vec![zero.clone(), t3, zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), t2.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone(), t.clone(), zero.clone()],
            vec![
                (&b * &t).scale(&rat(-2)),
                zero.clone(),
                -(&(&b * &b) * &t2),
                -(&b * &t),
                one,
            ],
        ],
    )
}

/// The inducing semidirect action on the projection plane, rescaled by t.
pub fn a3a1_plane_action() -> Representation {
    let ctx = a3a1_plane_context();
    let b = var(&ctx, "b");
    let t = var(&ctx, "t");
    let one = c(&ctx, 1);
    let zero = c(&ctx, 0);
    semidirect_rep(
        "a3a1_plane",
        &ctx,
        vec![
            vec![one, zero.clone(), &b * &t],
            vec![zero.clone(), &t * &t, zero.clone()],
            vec![zero.clone(), zero, t],
        ],
    )
}

// ---------------------------------------------------------------------------
// degree 3, one E6 singularity (no additive structure; carried for the
// exclusion checks)
// ---------------------------------------------------------------------------

fn e6_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x1", "x2", "x3"], &["a", "b"])
}

fn e6_plane_context() -> Arc<VariableContext> {
    VariableContext::new(&["x0", "x2", "x3"], &["a", "b"])
}

/// The cubic with an E6 singularity, projected from (x0 : x2 : x3).
pub fn e6_surface() -> SurfaceModel {
    let ctx = e6_context();
    let [x0, x1, x2, x3] = ["x0", "x1", "x2", "x3"].map(|n| var(&ctx, n));
    let g = &(&(&x1 * &(&x0 * &x0)) + &(&x0 * &(&x3 * &x3))) + &x2.pow(3);

    let p = e6_plane_context();
    let [y0, y1, y2] = ["x0", "x2", "x3"].map(|n| var(&p, n));
    let inverse = LinearSystem::new(vec![
        y0.pow(3),
        -(&(&y0 * &(&y2 * &y2)) + &y1.pow(3)),
        &(&y0 * &y0) * &y1,
        &(&y0 * &y0) * &y2,
    ])
    .expect("inverse system of the E6 cubic");

    SurfaceModel::new(
        "e6_cubic",
        &ctx,
        vec![g],
        vec![0, 2, 3],
        inverse,
        vec![(
            ProjectivePoint::from_ints(&[0, 1, 0, 0]).unwrap(),
            AdeLabel::E(6),
        )],
        vec![vec![x0.clone(), x2.clone()]],
        Some(PlaneConfiguration {
            line: var(&p, "x0"),
            points: vec![ProjectivePoint::from_ints(&[0, 0, 1]).unwrap()],
        }),
    )
    .expect("E6 cubic model data")
}

/// The translation action on the projection plane of the E6 cubic.
pub fn e6_plane_action() -> Representation {
    tau_on(&e6_plane_context())
}

// ---------------------------------------------------------------------------
// degree 4, D4: configuration data only
// ---------------------------------------------------------------------------

/// Curve-image configuration of the D4 quartic: the blown-down curves map
/// to one line and two distinct points on it. The point positions are a
/// normalization; only their number enters the exclusion.
pub fn d4_plane_configuration() -> PlaneConfiguration {
    let p = VariableContext::new(&["x0", "x1", "x2"], &[]);
    PlaneConfiguration {
        line: var(&p, "x0"),
        points: vec![
            ProjectivePoint::from_ints(&[0, 0, 1]).unwrap(),
            ProjectivePoint::from_ints(&[0, 1, 0]).unwrap(),
        ],
    }
}

// ---------------------------------------------------------------------------
// generic conjugator
// ---------------------------------------------------------------------------

/// Plane matrix with first row (1,0,0) and fully symbolic remaining entries,
/// over a context extending (a, b) by the six fresh parameters a10..a22.
pub fn generic_conjugator() -> PolyMatrix {
    let ctx = VariableContext::new(
        &["x0", "x1", "x2"],
        &["a", "b", "a10", "a11", "a12", "a20", "a21", "a22"],
    );
    let one = c(&ctx, 1);
    let zero = c(&ctx, 0);
    PolyMatrix::from_rows(
        &ctx,
        vec![
            vec![one, zero.clone(), zero.clone()],
            vec![var(&ctx, "a10"), var(&ctx, "a11"), var(&ctx, "a12")],
            vec![var(&ctx, "a20"), var(&ctx, "a21"), var(&ctx, "a22")],
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariance;
    use crate::poly::Homogeneity;

    fn model_is_consistent(s: &SurfaceModel) {
        assert!(s.inverse_map_lands_on_surface(), "{}: inverse map leaves the surface", s.name());
        assert!(s.projection_inverts_inverse_map(), "{}: projection does not invert", s.name());
        assert_eq!(s.inverse_map().degree(), 3);
    }

    #[test]
    fn d5_model_is_consistent() {
        let s = d5_surface();
        model_is_consistent(&s);
        for g in s.generators() {
            assert_eq!(g.homogeneity(), Homogeneity::Homogeneous(2));
        }
    }

    #[test]
    fn a3_model_is_consistent() {
        let s = a3_surface();
        model_is_consistent(&s);
        assert_eq!(s.inverse_map().dim(), 6);
    }

    #[test]
    fn a3a1_model_is_consistent() {
        let s = a3a1_surface();
        model_is_consistent(&s);
        assert_eq!(s.line_forms().len(), 3);
    }

    #[test]
    fn e6_model_is_consistent() {
        model_is_consistent(&e6_surface());
    }

    #[test]
    fn shipped_representations_satisfy_their_group_laws() {
        for rep in [
            tau(),
            rho(),
            d5_representation(),
            a3_representation(),
            a3a1_representation(),
            a3a1_plane_action(),
        ] {
            assert!(rep.check_group_law().holds, "{} fails its group law", rep.name());
        }
    }

    #[test]
    fn shipped_surfaces_are_invariant_under_their_actions() {
        let pairs = [
            (d5_surface(), d5_representation()),
            (a3_surface(), a3_representation()),
            (a3a1_surface(), a3a1_representation()),
        ];
        for (surface, rep) in &pairs {
            let out = invariance::ideal_invariant(surface, rep).unwrap();
            assert!(out.invariant, "{} not invariant", surface.name());
            for m in &out.memberships {
                assert!(m.combination.is_some(), "missing membership certificate");
            }
        }
    }

    #[test]
    fn d4_configuration_is_rho_incompatible() {
        let config = d4_plane_configuration();
        assert!(!crate::geom::rho_configuration_compatible(&config).unwrap());
    }

    /// The two quadrics of the D5 quartic together with their images span a
    /// rank-2 space in the 15-dimensional degree-2 monomial basis: the
    /// action stays inside the ideal.
    #[test]
    fn d5_quadrics_and_images_have_rank_two() {
        use crate::poly::coordinate_monomials;
        let surface = d5_surface();
        let rep = d5_representation();
        let ctx = surface.context();
        let monos = coordinate_monomials(ctx, 2);
        assert_eq!(monos.len(), 15);
        let mut rows: Vec<Vec<Polynomial>> = Vec::new();
        for g in surface.generators() {
            for f in [g.clone(), rep.act_on_polynomial(g).unwrap()] {
                let coeffs = f.coordinate_coefficients();
                rows.push(
                    monos
                        .iter()
                        .map(|m| coeffs.get(m).cloned().unwrap_or_else(|| Polynomial::zero(ctx)))
                        .collect(),
                );
            }
        }
        let stacked = PolyMatrix::from_rows(ctx, rows);
        assert_eq!(stacked.n_rows(), 4);
        assert_eq!(stacked.rank_over_fractions(), 2);
        // the first quadric is literally fixed
        let g0 = &surface.generators()[0];
        assert_eq!(rep.act_on_polynomial(g0).unwrap(), *g0);
    }
}
