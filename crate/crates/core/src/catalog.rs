//! The classification catalog: one entry per surface type, the
//! negative-curve criterion, and the blow-up graph connecting the types
//! that survive it.
//!
//! Line counts, toric and additive flags are transcribed data; the count of
//! (-2)-curves is derived from the singularity labels so it cannot drift
//! out of sync. All data is over the algebraic closure; field-of-definition
//! qualifiers are carried as free-text notes, not machine-checked logic.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// Rational double point label in the ADE classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeLabel {
    A(u8),
    D(u8),
    E(u8),
}

impl AdeLabel {
    /// Number of (-2)-curves in the minimal resolution.
    pub fn rank(self) -> u32 {
        match self {
            AdeLabel::A(n) | AdeLabel::D(n) | AdeLabel::E(n) => n as u32,
        }
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A{n}"),
            AdeLabel::D(n) => write!(f, "D{n}"),
            AdeLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

/// What the surface is over the algebraic closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    /// The projective plane.
    P2,
    /// The smooth quadric.
    P1xP1,
    /// The Hirzebruch surface with a (-2)-section.
    F2,
    /// A blow-up of the plane in at most eight points in almost general
    /// position (ordinary when the singularity list is empty).
    BlowUp,
}

/// One row of the classification: a surface type over the algebraic closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoType {
    pub degree: u8,
    pub kind: SurfaceKind,
    /// Connected components of (-2)-curves, largest first.
    pub singularities: Vec<AdeLabel>,
    /// Number of (-1)-curves.
    pub lines: u32,
    pub toric: bool,
    /// Equivariant compactification of the two-dimensional additive group.
    pub additive: bool,
    /// Citation keys for proofs of the point-counting asymptotics.
    pub refs: Vec<&'static str>,
    pub note: Option<&'static str>,
}

impl DelPezzoType {
    /// Compact symbol, e.g. "D5", "A3+A1", "2A1", "Bl2P2", "P1xP1".
    pub fn symbol(&self) -> String {
        match self.kind {
            SurfaceKind::P2 => "P2".into(),
            SurfaceKind::P1xP1 => "P1xP1".into(),
            SurfaceKind::F2 => "F2".into(),
            SurfaceKind::BlowUp => {
                if self.singularities.is_empty() {
                    format!("Bl{}P2", 9 - self.degree)
                } else {
                    singularity_symbol(&self.singularities)
                }
            }
        }
    }

    /// Node label used in graph output, e.g. "4/D5".
    pub fn node_label(&self) -> String {
        format!("{}/{}", self.degree, self.symbol())
    }

    /// Number of (-2)-curves: the sum of the ranks of the singularity
    /// labels; the Hirzebruch kind carries its one (-2)-section.
    pub fn two_curve_count(&self) -> u32 {
        match self.kind {
            SurfaceKind::F2 => 1,
            SurfaceKind::P2 | SurfaceKind::P1xP1 => 0,
            SurfaceKind::BlowUp => self.singularities.iter().map(|l| l.rank()).sum(),
        }
    }

    /// Rank of the Picard group of the minimal desingularisation.
    pub fn picard_rank(&self) -> u32 {
        match self.kind {
            SurfaceKind::P2 => 1,
            SurfaceKind::P1xP1 | SurfaceKind::F2 => 2,
            SurfaceKind::BlowUp => 10 - self.degree as u32,
        }
    }

    pub fn negative_curve_count(&self) -> u32 {
        self.lines + self.two_curve_count()
    }

    /// Necessary condition for an additive structure: the number of
    /// negative curves does not exceed the Picard rank.
    pub fn passes_criterion(&self) -> bool {
        self.negative_curve_count() <= self.picard_rank()
    }

    /// The transcribed toric / additive flags.
    pub fn classify(&self) -> Classification {
        Classification {
            toric: self.toric,
            additive: self.additive,
        }
    }

    pub fn criterion_summary(&self) -> String {
        let n = self.negative_curve_count();
        let r = self.picard_rank();
        if n <= r {
            format!("{n}<={r}")
        } else {
            format!("{n}>{r}")
        }
    }
}

/// Toric / additive verdict for one type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub toric: bool,
    pub additive: bool,
}

fn singularity_symbol(labels: &[AdeLabel]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < labels.len() {
        let mut j = i;
        while j < labels.len() && labels[j] == labels[i] {
            j += 1;
        }
        let count = j - i;
        if count > 1 {
            parts.push(format!("{count}{}", labels[i]));
        } else {
            parts.push(labels[i].to_string());
        }
        i = j;
    }
    parts.join("+")
}

fn sings(labels: &[AdeLabel]) -> Vec<AdeLabel> {
    let mut v = labels.to_vec();
    // largest first; within equal rank, E before D before A
    v.sort_by(|a, b| {
        b.rank().cmp(&a.rank()).then_with(|| {
            let fam = |l: &AdeLabel| match l {
                AdeLabel::E(_) => 2,
                AdeLabel::D(_) => 1,
                AdeLabel::A(_) => 0,
            };
            fam(b).cmp(&fam(a))
        })
    });
    v
}

const NEEDS_POINT: &str = "forms need a non-singular rational point";

/// The full catalog: every type of degree at least 4 together with the
/// relevant types of lower degree, plus the smooth quadric. Degrees at most
/// 3 are cataloged only for the listed rows; other types of those degrees
/// are intentionally absent and look-ups for them return nothing.
pub fn catalog() -> &'static [DelPezzoType] {
    static CATALOG: OnceLock<Vec<DelPezzoType>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn build_catalog() -> Vec<DelPezzoType> {
    use AdeLabel::{A, D, E};
    use SurfaceKind::{BlowUp, F2, P1xP1, P2};
    let row = |degree: u8,
               kind: SurfaceKind,
               labels: &[AdeLabel],
               lines: u32,
               toric: bool,
               additive: bool,
               refs: &[&'static str],
               note: Option<&'static str>| DelPezzoType {
        degree,
        kind,
        singularities: sings(labels),
        lines,
        toric,
        additive,
        refs: refs.to_vec(),
        note,
    };
    vec![
        row(9, P2, &[], 0, true, true, &["MR1620682", "MR1906155"], Some(NEEDS_POINT)),
        row(8, BlowUp, &[], 1, true, true, &["MR1620682", "MR1906155"], None),
        row(8, F2, &[], 0, true, true, &["MR1620682", "MR1906155"], Some(NEEDS_POINT)),
        row(
            8,
            P1xP1,
            &[],
            0,
            true,
            true,
            &["MR1620682", "MR1906155"],
            Some(NEEDS_POINT),
        ),
        row(7, BlowUp, &[], 3, true, true, &["MR1620682", "MR1906155"], None),
        row(7, BlowUp, &[A(1)], 2, true, true, &["MR1620682", "MR1906155"], None),
        row(6, BlowUp, &[], 6, true, false, &["MR1620682"], None),
        row(6, BlowUp, &[A(1)], 4, true, false, &["MR1620682"], None),
        row(6, BlowUp, &[A(1)], 3, false, true, &["MR1906155"], None),
        row(6, BlowUp, &[A(1), A(1)], 2, true, true, &["MR1620682", "MR1906155"], None),
        row(6, BlowUp, &[A(2)], 2, false, true, &["MR1906155"], None),
        row(6, BlowUp, &[A(2), A(1)], 1, true, true, &["MR1620682", "MR1906155"], None),
        row(5, BlowUp, &[], 10, false, false, &["MR1909606", "MR2099200"], None),
        row(5, BlowUp, &[A(1)], 7, false, false, &[], None),
        row(5, BlowUp, &[A(1), A(1)], 5, true, false, &["MR1620682"], None),
        row(5, BlowUp, &[A(2)], 4, false, false, &["arXiv:0710.1583"], None),
        row(5, BlowUp, &[A(2), A(1)], 3, true, false, &["MR1620682"], None),
        row(5, BlowUp, &[A(3)], 2, false, true, &["MR1906155"], None),
        row(5, BlowUp, &[A(4)], 1, false, true, &["MR1906155"], None),
        row(4, BlowUp, &[], 16, false, false, &["arXiv:0808.1616"], None),
        row(4, BlowUp, &[A(1)], 12, false, false, &[], None),
        row(4, BlowUp, &[A(1), A(1)], 9, false, false, &[], None),
        row(4, BlowUp, &[A(1), A(1)], 8, false, false, &["arXiv:1002.0255"], None),
        row(4, BlowUp, &[A(2)], 8, false, false, &[], None),
        row(4, BlowUp, &[A(1), A(1), A(1)], 6, false, false, &[], None),
        row(4, BlowUp, &[A(2), A(1)], 6, false, false, &[], None),
        row(4, BlowUp, &[A(3)], 5, false, false, &[], None),
        row(4, BlowUp, &[A(3)], 4, false, false, &[], None),
        row(4, BlowUp, &[A(1), A(1), A(1), A(1)], 4, true, false, &["MR1620682"], None),
        row(4, BlowUp, &[A(2), A(1), A(1)], 4, true, false, &["MR1620682"], None),
        row(4, BlowUp, &[A(3), A(1)], 3, false, false, &["MR2520770"], None),
        row(4, BlowUp, &[A(4)], 3, false, false, &["MR2543667"], None),
        row(4, BlowUp, &[D(4)], 2, false, false, &["MR2290499"], None),
        row(4, BlowUp, &[A(3), A(1), A(1)], 2, true, false, &["MR1620682"], None),
        row(4, BlowUp, &[D(5)], 1, false, true, &["MR1906155", "MR2320172"], None),
        row(3, BlowUp, &[D(5)], 3, false, false, &["MR2520769"], None),
        row(3, BlowUp, &[A(2), A(2), A(2)], 3, true, false, &["MR1620682"], None),
        row(3, BlowUp, &[E(6)], 1, false, false, &["MR2332351"], None),
        row(2, BlowUp, &[E(7)], 1, false, false, &[], None),
        row(
            1,
            BlowUp,
            &[E(8)],
            1,
            false,
            false,
            &[],
            Some("two isomorphism classes share this negative-curve type"),
        ),
    ]
}

/// Look up a blow-up type by degree, singularity labels and line count.
/// Returns `None` for types that are not cataloged.
pub fn lookup(degree: u8, labels: &[AdeLabel], lines: u32) -> Option<&'static DelPezzoType> {
    let key = sings(labels);
    catalog().iter().find(|t| {
        t.kind == SurfaceKind::BlowUp
            && t.degree == degree
            && t.singularities == key
            && t.lines == lines
    })
}

/// Look up one of the non-blow-up kinds.
pub fn lookup_kind(kind: SurfaceKind) -> Option<&'static DelPezzoType> {
    catalog().iter().find(|t| t.kind == kind)
}

/// The types passing the negative-curve criterion: exactly the nodes of the
/// blow-up graph.
pub fn figure_nodes() -> Vec<&'static DelPezzoType> {
    catalog().iter().filter(|t| t.passes_criterion()).collect()
}

/// Directed graph of blow-up maps between the surviving types. Edges point
/// from the blown-up surface to the blown-down one (one degree higher).
#[derive(Debug, Clone)]
pub struct BlowupGraph {
    /// Indices into the catalog.
    pub nodes: Vec<usize>,
    /// (child, parent) pairs of catalog indices; the child is the blow-up.
    pub edges: Vec<(usize, usize)>,
}

impl BlowupGraph {
    pub fn node_types(&self) -> Vec<&'static DelPezzoType> {
        self.nodes.iter().map(|&i| &catalog()[i]).collect()
    }

    pub fn edge_types(&self) -> Vec<(&'static DelPezzoType, &'static DelPezzoType)> {
        self.edges
            .iter()
            .map(|&(c, p)| (&catalog()[c], &catalog()[p]))
            .collect()
    }

    /// Structural sanity: acyclic; every edge raises the degree by exactly
    /// one and does not increase the number of negative curves; the additive
    /// types are closed under blow-down.
    pub fn validate(&self) -> Result<(), String> {
        let cat = catalog();
        for &(c, p) in &self.edges {
            let child = &cat[c];
            let parent = &cat[p];
            if child.degree + 1 != parent.degree {
                return Err(format!(
                    "edge {} -> {} does not raise the degree by one",
                    child.node_label(),
                    parent.node_label()
                ));
            }
            if child.negative_curve_count() < parent.negative_curve_count() {
                return Err(format!(
                    "edge {} -> {} gains negative curves under a blow-down",
                    child.node_label(),
                    parent.node_label()
                ));
            }
            if child.additive && !parent.additive {
                return Err(format!(
                    "blow-down target of additive {} is not additive",
                    child.node_label()
                ));
            }
        }
        // degrees strictly increase along edges, so cycles are impossible;
        // still walk the graph to guard the embedded data
        let mut visiting = vec![0u8; catalog().len()];
        fn dfs(n: usize, edges: &[(usize, usize)], state: &mut [u8]) -> bool {
            state[n] = 1;
            for &(c, p) in edges {
                if c == n {
                    if state[p] == 1 {
                        return false;
                    }
                    if state[p] == 0 && !dfs(p, edges, state) {
                        return false;
                    }
                }
            }
            state[n] = 2;
            true
        }
        for &n in &self.nodes {
            if visiting[n] == 0 && !dfs(n, &self.edges, &mut visiting) {
                return Err("blow-up graph contains a cycle".into());
            }
        }
        Ok(())
    }
}

/// The blow-up graph on the criterion-passing types.
pub fn blowup_graph() -> BlowupGraph {
    use AdeLabel::{A, D, E};
    let cat = catalog();
    let idx = |t: &'static DelPezzoType| {
        cat.iter()
            .position(|u| u == t)
            .expect("graph node present in catalog")
    };
    let blow = |d: u8, l: &[AdeLabel], n: u32| idx(lookup(d, l, n).expect("cataloged type"));
    let kind = |k: SurfaceKind| idx(lookup_kind(k).expect("cataloged kind"));

    let p2 = kind(SurfaceKind::P2);
    let f2 = kind(SurfaceKind::F2);
    let quadric = kind(SurfaceKind::P1xP1);
    let bl1 = blow(8, &[], 1);
    let bl2 = blow(7, &[], 3);
    let a1_7 = blow(7, &[A(1)], 2);
    let a1_6 = blow(6, &[A(1)], 3);
    let two_a1_6 = blow(6, &[A(1), A(1)], 2);
    let a2_6 = blow(6, &[A(2)], 2);
    let a2a1_6 = blow(6, &[A(2), A(1)], 1);
    let a3_5 = blow(5, &[A(3)], 2);
    let a4_5 = blow(5, &[A(4)], 1);
    let d4_4 = blow(4, &[D(4)], 2);
    let d5_4 = blow(4, &[D(5)], 1);
    let e6_3 = blow(3, &[E(6)], 1);
    let e7_2 = blow(2, &[E(7)], 1);
    let e8_1 = blow(1, &[E(8)], 1);

    let graph = BlowupGraph {
        nodes: vec![
            p2, bl1, f2, quadric, bl2, a1_7, a1_6, two_a1_6, a2_6, a2a1_6, a3_5, a4_5, d4_4,
            d5_4, e6_3, e7_2, e8_1,
        ],
        edges: vec![
            (bl1, p2),
            (bl2, bl1),
            (bl2, quadric),
            (a1_7, bl1),
            (a1_7, f2),
            (a1_6, bl2),
            (two_a1_6, a1_7),
            (two_a1_6, bl2),
            (a2_6, a1_7),
            (a2a1_6, a1_7),
            (a3_5, a2_6),
            (a3_5, two_a1_6),
            (a4_5, a2a1_6),
            (d4_4, a3_5),
            (d5_4, a4_5),
            (e6_3, d5_4),
            (e7_2, e6_3),
            (e8_1, e7_2),
        ],
    };
    graph
        .validate()
        .expect("embedded blow-up graph is structurally sound");
    graph
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

/// Criterion arithmetic for one row of the export.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CriterionJson {
    pub negative_curves: u32,
    pub picard_rank: u32,
    pub passes: bool,
}

/// One catalog row in the documented export schema.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogRowJson {
    pub degree: u8,
    pub kind: SurfaceKind,
    pub symbol: String,
    pub singularities: Vec<String>,
    pub lines: u32,
    pub toric: bool,
    pub additive: bool,
    pub refs: Vec<String>,
    pub criterion: CriterionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&DelPezzoType> for CatalogRowJson {
    fn from(t: &DelPezzoType) -> Self {
        CatalogRowJson {
            degree: t.degree,
            kind: t.kind,
            symbol: t.symbol(),
            singularities: t.singularities.iter().map(|l| l.to_string()).collect(),
            lines: t.lines,
            toric: t.toric,
            additive: t.additive,
            refs: t.refs.iter().map(|r| r.to_string()).collect(),
            criterion: CriterionJson {
                negative_curves: t.negative_curve_count(),
                picard_rank: t.picard_rank(),
                passes: t.passes_criterion(),
            },
            note: t.note.map(|n| n.to_string()),
        }
    }
}

/// The whole catalog in the export schema.
pub fn catalog_json() -> Vec<CatalogRowJson> {
    catalog().iter().map(CatalogRowJson::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use AdeLabel::{A, D};

    #[test]
    fn two_curve_counts_follow_label_ranks() {
        assert_eq!(lookup(4, &[D(5)], 1).unwrap().two_curve_count(), 5);
        assert_eq!(lookup(4, &[A(3), A(1)], 3).unwrap().two_curve_count(), 4);
        assert_eq!(lookup_kind(SurfaceKind::F2).unwrap().two_curve_count(), 1);
        assert_eq!(lookup_kind(SurfaceKind::P2).unwrap().two_curve_count(), 0);
    }

    #[test]
    fn picard_ranks() {
        assert_eq!(lookup(4, &[D(5)], 1).unwrap().picard_rank(), 6);
        assert_eq!(lookup_kind(SurfaceKind::P2).unwrap().picard_rank(), 1);
        assert_eq!(lookup_kind(SurfaceKind::F2).unwrap().picard_rank(), 2);
        assert_eq!(lookup_kind(SurfaceKind::P1xP1).unwrap().picard_rank(), 2);
    }

    #[test]
    fn criterion_borderline_cases() {
        // D5 in degree 4: 1 + 5 <= 6
        assert!(lookup(4, &[D(5)], 1).unwrap().passes_criterion());
        // A4 in degree 4: 3 + 4 > 6
        assert!(!lookup(4, &[A(4)], 3).unwrap().passes_criterion());
        // P2: 0 <= 1
        assert!(lookup_kind(SurfaceKind::P2).unwrap().passes_criterion());
        // 3A2 in degree 3: 3 + 6 > 7
        assert!(!lookup(3, &[A(2), A(2), A(2)], 3).unwrap().passes_criterion());
        // degree-6 ordinary blow-up: 6 > 4
        assert!(!lookup(6, &[], 6).unwrap().passes_criterion());
        // degree-5 A2: 4 + 2 > 5
        assert!(!lookup(5, &[A(2)], 4).unwrap().passes_criterion());
    }

    #[test]
    fn classification_flags_match_the_table() {
        let t = lookup(6, &[A(1)], 3).unwrap().classify();
        assert!(!t.toric);
        assert!(t.additive);
        let t = lookup(6, &[A(1)], 4).unwrap().classify();
        assert!(t.toric);
        assert!(!t.additive);
        let t = lookup(4, &[D(4)], 2).unwrap().classify();
        assert!(!t.toric);
        assert!(!t.additive);
    }

    #[test]
    fn figure_nodes_match_the_criterion_and_contain_the_borderline_types() {
        let nodes = figure_nodes();
        assert_eq!(nodes.len(), 17);
        let symbols: Vec<String> = nodes.iter().map(|t| t.node_label()).collect();
        assert!(symbols.contains(&"5/A3".to_string()));
        assert!(symbols.contains(&"5/A4".to_string()));
        assert!(!symbols.contains(&"6/Bl3P2".to_string()));
        assert!(!symbols.contains(&"5/A2".to_string()));
    }

    #[test]
    fn additive_types_all_pass_the_criterion() {
        for t in catalog() {
            if t.additive {
                assert!(t.passes_criterion(), "{} fails the criterion", t.node_label());
            }
        }
    }

    #[test]
    fn criterion_converse_fails_exactly_on_the_e_chain_and_d4() {
        let exceptions: Vec<String> = catalog()
            .iter()
            .filter(|t| t.passes_criterion() && !t.additive)
            .map(|t| t.node_label())
            .collect();
        assert_eq!(exceptions, vec!["4/D4", "3/E6", "2/E7", "1/E8"]);
    }

    #[test]
    fn uncatalogued_rows_return_nothing() {
        assert!(lookup(3, &[A(1)], 10).is_none());
        assert!(lookup(2, &[A(1)], 1).is_none());
    }

    #[test]
    fn blowup_graph_is_sound() {
        let g = blowup_graph();
        assert_eq!(g.nodes.len(), 17);
        assert_eq!(g.edges.len(), 18);
        g.validate().unwrap();
        let labels: Vec<(String, String)> = g
            .edge_types()
            .iter()
            .map(|(c, p)| (c.node_label(), p.node_label()))
            .collect();
        assert!(labels.contains(&("3/E6".into(), "4/D5".into())));
        assert!(labels.contains(&("4/D5".into(), "5/A4".into())));
        assert!(labels.contains(&("5/A4".into(), "6/A2+A1".into())));
        assert!(labels.contains(&("5/A3".into(), "6/2A1".into())));
        assert!(labels.contains(&("4/D4".into(), "5/A3".into())));
        assert!(labels.contains(&("2/E7".into(), "3/E6".into())));
        assert!(labels.contains(&("1/E8".into(), "2/E7".into())));
        assert!(labels.contains(&("8/Bl1P2".into(), "9/P2".into())));
        assert!(labels.contains(&("7/Bl2P2".into(), "8/P1xP1".into())));
        assert!(labels.contains(&("7/A1".into(), "8/F2".into())));
    }

    #[test]
    fn symbols_render_compactly() {
        assert_eq!(lookup(4, &[A(1), A(2), A(1)], 4).unwrap().symbol(), "A2+2A1");
        assert_eq!(lookup(4, &[A(1), A(1), A(1), A(1)], 4).unwrap().symbol(), "4A1");
        assert_eq!(lookup(8, &[], 1).unwrap().symbol(), "Bl1P2");
    }

    #[test]
    fn degrees_and_line_counts_are_in_range() {
        for t in catalog() {
            assert!((1..=9).contains(&t.degree), "{}", t.node_label());
        }
        assert_eq!(catalog().len(), 40);
    }

    #[test]
    fn blow_up_key_is_unique() {
        let cat = catalog();
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i + 1..] {
                if a.kind == SurfaceKind::BlowUp && b.kind == SurfaceKind::BlowUp {
                    assert!(
                        (a.degree, &a.singularities, a.lines)
                            != (b.degree, &b.singularities, b.lines),
                        "duplicate key {} vs {}",
                        a.node_label(),
                        b.node_label()
                    );
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let rows = catalog_json();
        let text = serde_json::to_string(&rows).unwrap();
        let back: Vec<CatalogRowJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(rows, back);
        assert_eq!(rows.len(), catalog().len());
    }
}
