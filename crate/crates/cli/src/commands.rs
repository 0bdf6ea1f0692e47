use anyhow::{bail, Context, Result};
use qgk_core::bilform::{normalize_w, AugBilinearMap};
use qgk_core::graphs::{
    decompose, graph_bilinear, parse_graph, ConstructionTree, Decomposition,
};
use qgk_core::hull::{functor_f_of_g, hull_dims};
use qgk_core::presentations::{parse_presentation, presentation_cup_product};
use qgk_core::slot::{self, has_common_slot, is_quaternionic, AxiomStatus, SlotVerdict};
use qgk_core::tower::eval_tree;

use crate::report::{Report, Status};

/// Source text for [`cmd_emit_bilinear`].
#[derive(Debug, Clone)]
pub enum Source {
    Graph(String),
    Presentation(String),
    Tree(String),
}

fn slot_feasible(map: &AugBilinearMap) -> bool {
    (map.p() as u64).saturating_pow(2 * map.n() as u32) <= slot::PAIR_MAX
}

pub fn cmd_graph_check(text: &str, p: u8) -> Result<Report> {
    let g = parse_graph(text).context("reading graph")?;
    let mut report = Report::new(format!("qgk graph-check --p {p}"));
    let map = graph_bilinear(&g, p)?;
    let (shape, realizable) = match decompose(&g) {
        Decomposition::Tree(t) => (format!("tree: {t}"), true),
        Decomposition::Forbidden(w) => {
            debug_assert!(w.verify(&g));
            (format!("forbidden {w}"), false)
        }
    };
    if p != 2 {
        report.push(Status::Info, "graph-check", shape);
        return Ok(report);
    }
    if !slot_feasible(&map) {
        report.push(Status::Skip, "graph-check", format!("{shape}; common-slot: too large to decide"));
        return Ok(report);
    }
    let slot = has_common_slot(&map)?;
    let detail = format!("{shape}; common-slot: {}", slot.holds());
    report.check(slot.holds() == realizable, "graph-check", detail);
    Ok(report)
}

/// Relabels a tree's evaluation into vertex order with the canonical W-basis.
fn tree_map(text: &str, p: u8) -> Result<AugBilinearMap> {
    let tree = ConstructionTree::parse(text.trim()).context("reading tree")?;
    let order = tree.vertex_order();
    let n = order.len();
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        bail!("tree labels must be exactly 1..{n}");
    }
    let field = eval_tree(&tree, p)?;
    let map = field.map().permute_v(&order)?;
    let vlabels = (0..n).map(|i| format!("v{}", i + 1)).collect();
    Ok(normalize_w(&map).with_labels(Some(vlabels), None))
}

/// Returns the report and the bilinear-map file contents.
pub fn cmd_emit_bilinear(source: &Source, p: u8) -> Result<(Report, String)> {
    let (kind, map) = match source {
        Source::Graph(text) => ("graph", graph_bilinear(&parse_graph(text).context("reading graph")?, p)?),
        Source::Presentation(text) => {
            let pres = parse_presentation(text).context("reading presentation")?;
            ("presentation", presentation_cup_product(&pres, p)?)
        }
        Source::Tree(text) => ("tree", tree_map(text, p)?),
    };
    let mut report = Report::new(format!("qgk emit --{kind} --p {p}"));
    report.push(Status::Info, "emit", format!("dimV {} dimW {}", map.n(), map.m()));
    Ok((report, map.to_text()))
}

fn read_map(text: &str) -> Result<AugBilinearMap> {
    let map = AugBilinearMap::from_text(text).context("reading bilinear map")?;
    if let Some(v) = map.validate().into_iter().next() {
        bail!("not an augmented bilinear map: {v:?}");
    }
    Ok(map)
}

pub fn cmd_slot(text: &str) -> Result<Report> {
    let map = read_map(text)?;
    let mut report = Report::new("qgk slot");
    match has_common_slot(&map)? {
        SlotVerdict::Holds => report.push(Status::Info, "common-slot", "true"),
        SlotVerdict::Fails(w) => {
            let ok = w.verify(&map);
            report.check(ok, "common-slot", format!("false; witness v={} u={} v'={} u'={}", w.v, w.u, w.v2, w.u2));
        }
    }
    if map.p() == 2 {
        let q = is_quaternionic(&map)?;
        for (k, status) in [&q.axiom1, &q.axiom2, &q.axiom3, &q.axiom4].into_iter().enumerate() {
            let detail = match status {
                AxiomStatus::Pass => "pass".to_string(),
                AxiomStatus::Certified => "pass (by bilinearity)".to_string(),
                AxiomStatus::Fail(w) => format!("fail: {w}"),
            };
            report.push(Status::Info, format!("quaternionic-axiom-{}", k + 1), detail);
        }
    }
    Ok(report)
}

pub fn cmd_hull(text: &str, dmax: usize) -> Result<Report> {
    let map = read_map(text)?;
    let mut report = Report::new(format!("qgk hull --dmax {dmax}"));
    report.push(Status::Info, "dims", hull_dims(&map, dmax)?.report_line());
    let fg = functor_f_of_g(&map)?;
    let detail = match (&fg.iso, fg.gap) {
        (Some(_), _) => "isomorphism".to_string(),
        (None, 0) => "no isomorphism: map is not surjective".to_string(),
        (None, gap) => format!("no isomorphism: pure tensors miss {gap} kernel dimensions"),
    };
    report.push(Status::Info, "F(G(b))", detail);
    Ok(report)
}
