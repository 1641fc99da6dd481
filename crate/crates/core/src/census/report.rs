//! Per-model report and Graphviz export.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::algo::{analyze, field_property_equivalences, GraphReport};
use crate::canon::{are_isomorphic, automorphism_group, field_weighted_graph, IsoMode};
use crate::error::Result;
use crate::field::{parse_poly, FieldModel};
use crate::graph::{build_cover, build_subgraph, EdgeClass, FieldGraph, Variant};
use crate::spectral::{check_lower_bounds, LowerBounds, DEFAULT_TOL};

/// Covers are only built for fields up to this order in reports.
const REPORT_COVER_MAX: u64 = 256;

#[derive(Clone, Debug, Serialize)]
pub struct ModelReport {
    pub p: u32,
    pub k: usize,
    pub polynomial: String,
    pub order: u64,
    pub graph: GraphReport,
    pub primitive: bool,
    pub normal: bool,
    pub additive_connected: bool,
    pub multiplicative_connected: bool,
    /// Absent when the field is too large for the cover to be built.
    pub cover_connected: Option<bool>,
    pub spectral: LowerBounds,
    pub lower_bounds_hold: bool,
    pub aut_order: String,
    pub reciprocal_partner: Option<String>,
    pub isomorphic_to_partner: Option<bool>,
}

impl ModelReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |d| d.to_string());
        let mut s = String::new();
        let _ = writeln!(s, "model            F_{}[x]/({})", self.p, self.polynomial);
        let _ = writeln!(s, "order            {}", self.order);
        let _ = writeln!(s, "connected        {} (strongly: {})", g.connected, g.strongly_connected);
        let _ = writeln!(s, "diameter         {} (bound {})", opt(g.diameter), g.diameter_bound);
        let _ = writeln!(
            s,
            "directed diam.   {} (bound {})",
            opt(g.directed_diameter),
            g.directed_diameter_bound
        );
        let _ = writeln!(s, "girth            {}", opt(g.girth));
        let _ = writeln!(s, "eulerian         {} (directed: {})", g.eulerian, g.directed_eulerian);
        let _ = writeln!(s, "primitive        {}", self.primitive);
        let _ = writeln!(s, "normal           {}", self.normal);
        let _ = writeln!(s, "additive conn.   {}", self.additive_connected);
        let _ = writeln!(s, "mult. conn.      {}", self.multiplicative_connected);
        let cover = self.cover_connected.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(s, "cover conn.      {cover}");
        let sp = &self.spectral;
        let _ = writeln!(s, "lambda1          {:.12}", sp.lambda1);
        let _ = writeln!(s, "  >= {:.6e} (general)", sp.general);
        let _ = writeln!(s, "  >= {:.6e} (diameter bound)", sp.via_diameter_bound);
        let _ = writeln!(s, "  >= {:.6e} (diameter {})", sp.via_diameter, sp.diameter);
        if let Some(b) = sp.normal {
            let _ = writeln!(s, "  >= {b:.12} (normal)");
        }
        let _ = writeln!(s, "bounds hold      {}", self.lower_bounds_hold);
        let _ = writeln!(s, "|Aut|            {}", self.aut_order);
        match (&self.reciprocal_partner, self.isomorphic_to_partner) {
            (Some(r), Some(iso)) => {
                let _ = writeln!(s, "reciprocal       {r} (isomorphic: {iso})");
            }
            _ => {
                let _ = writeln!(s, "reciprocal       -");
            }
        }
        s
    }
}

fn model_from_text(p: u32, f: &str) -> Result<FieldModel> {
    FieldModel::new(&parse_poly(f, p)?)
}

/// Full report for the model F_p[x]/(f).
pub fn report(p: u32, f: &str) -> Result<ModelReport> {
    let model = model_from_text(p, f)?;
    let eq = field_property_equivalences(&model, model.order() <= REPORT_COVER_MAX);
    let spectral = check_lower_bounds(&model)?;
    let g = field_weighted_graph(&model, IsoMode::Default);
    let aut = automorphism_group(&g);
    let partner = model.reciprocal().ok();
    let iso = partner
        .as_ref()
        .map(|r| are_isomorphic(&g, &field_weighted_graph(r, IsoMode::Default)));
    Ok(ModelReport {
        p,
        k: model.k(),
        polynomial: model.modulus().to_string(),
        order: model.order(),
        graph: analyze(&model),
        primitive: eq.primitive,
        normal: eq.normal,
        additive_connected: eq.additive_connected,
        multiplicative_connected: eq.multiplicative_connected,
        cover_connected: eq.cover_connected,
        lower_bounds_hold: spectral.holds(DEFAULT_TOL),
        spectral,
        aut_order: aut.order.to_string(),
        reciprocal_partner: partner.map(|r| r.modulus().to_string()),
        isomorphic_to_partner: iso,
    })
}

const ORANGES: [&str; 8] = [
    "#ff8c00", "#e06000", "#ffa64d", "#c04a00", "#ffbf80", "#a33d00", "#ff7f24", "#ffd1a3",
];
const BLUES: [&str; 8] = [
    "#1f5fbf", "#0b3b8c", "#5b8fe0", "#082a66", "#8fb4f0", "#2f74d0", "#14479e", "#b5cdf5",
];

fn edge_color(class: EdgeClass, gen_index: usize) -> &'static str {
    match class {
        EdgeClass::Additive => ORANGES[gen_index % ORANGES.len()],
        EdgeClass::Multiplicative => BLUES[gen_index % BLUES.len()],
    }
}

fn node_label(model: &FieldModel, variant: Variant, v: usize) -> String {
    let q = model.order();
    match variant {
        Variant::Multiplicative => (v + 1).to_string(),
        Variant::Cover => format!("({},{})", v as u64 / (q - 1), v as u64 % (q - 1) + 1),
        _ => v.to_string(),
    }
}

/// Undirected DOT drawing; one line per edge so multiplicities show as
/// parallel edges. Vertices sit on a circle in index order.
pub fn export_dot(p: u32, f: &str, variant: Variant) -> Result<String> {
    let model = model_from_text(p, f)?;
    let g: FieldGraph = match variant {
        Variant::Cover => build_cover(&model).graph,
        v => build_subgraph(&model, v)?,
    };
    let n = g.n;
    let radius = (n as f64 / (2.0 * PI) * 0.6).max(1.0);
    let mut s = String::new();
    let _ = writeln!(s, "graph \"F_{}[x]/({}) {}\" {{", p, model.modulus(), variant);
    let _ = writeln!(s, "  layout=neato;");
    let _ = writeln!(s, "  node [shape=circle, fontsize=8, width=0.3, fixedsize=true];");
    for v in 0..n {
        let a = 2.0 * PI * v as f64 / n as f64;
        let _ = writeln!(
            s,
            "  {v} [label=\"{}\", pos=\"{:.4},{:.4}!\"];",
            node_label(&model, variant, v),
            radius * a.cos(),
            radius * a.sin()
        );
    }
    for e in &g.edges {
        let _ = writeln!(
            s,
            "  {} -- {} [color=\"{}\"];",
            e.from,
            e.to,
            edge_color(e.kind.class, e.kind.gen_index)
        );
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn dot_counts_and_stability() {
        let a = export_dot(2, "x^2+x+1", Variant::Full).unwrap();
        let b = export_dot(2, "x^2+x+1", Variant::Full).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().filter(|l| l.contains(" -- ")).count(), 14);
        assert_eq!(a.lines().filter(|l| l.contains("pos=")).count(), 4);
        assert!(a.contains(ORANGES[0]) && a.contains(BLUES[1]));
    }

    #[test]
    fn reducible_rejected() {
        assert!(matches!(report(3, "x^2+2"), Err(Error::Reducible(_))));
        assert!(matches!(
            export_dot(3, "x^2+1", Variant::Core(5)),
            Err(Error::InvalidVariant(_))
        ));
    }

    #[test]
    fn report_x2_x_2() {
        let r = report(3, "x^2+x+2").unwrap();
        assert_eq!(r.graph.girth, Some(2));
        assert_eq!(r.aut_order, "8");
        assert_eq!(r.reciprocal_partner.as_deref(), Some("x^2 + 2*x + 2"));
        assert_eq!(r.isomorphic_to_partner, Some(true));
        assert!(r.lower_bounds_hold);
        assert!(r.to_text().contains("|Aut|            8"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["aut_order"], "8");
    }
}
