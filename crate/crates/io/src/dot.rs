//! Graphviz export. Immediate causality is drawn as solid arrows, binary
//! conflicts as dashed undirected edges, larger generators through a
//! point-shaped hyperedge node. Output is sorted by id, so it is stable.

use std::fmt::Write;

use esgame_core::es::Configurations;
use esgame_core::{Esp, EventStructure, PreStrategy};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for a structure; `labels[e]` is the node label of event `e`.
#[must_use]
pub fn structure_dot(name: &str, s: &EventStructure, labels: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s.id(a).cmp(s.id(b)));
    for &e in &order {
        writeln!(out, "  {} [label={}];", quote(s.id(e)), quote(&labels[e])).unwrap();
    }
    let c = s.canonical();
    for (a, b) in &c.prec {
        writeln!(out, "  {} -> {};", quote(a), quote(b)).unwrap();
    }
    for (k, g) in c.conflicts.iter().enumerate() {
        if let [a, b] = &g[..] {
            writeln!(
                out,
                "  {} -> {} [dir=none, style=dashed, constraint=false];",
                quote(a),
                quote(b)
            )
            .unwrap();
        } else {
            let hub = quote(&format!("#conflict{k}"));
            writeln!(out, "  {hub} [shape=point];").unwrap();
            for a in g {
                writeln!(out, "  {hub} -> {} [dir=none, style=dashed];", quote(a)).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[must_use]
pub fn es_dot(name: &str, s: &EventStructure) -> String {
    let labels: Vec<String> = s.ids().iter().map(ToString::to_string).collect();
    structure_dot(name, s, &labels)
}

/// Nodes are labelled `id+` or `id-`.
#[must_use]
pub fn esp_dot(name: &str, a: &Esp) -> String {
    let labels: Vec<String> = (0..a.len())
        .map(|e| format!("{}{}", a.id(e), a.polarity(e)))
        .collect();
    structure_dot(name, a.structure(), &labels)
}

/// Nodes are labelled `id+ : game-id`.
#[must_use]
pub fn strategy_dot(name: &str, sigma: &PreStrategy) -> String {
    let (s, g) = (sigma.inner(), sigma.game());
    let labels: Vec<String> = (0..s.len())
        .map(|e| format!("{}{} : {}", s.id(e), s.polarity(e), g.id(sigma.label()[e])))
        .collect();
    structure_dot(name, s.structure(), &labels)
}

/// The configurations with their covering steps.
#[must_use]
pub fn configurations_dot(name: &str, s: &EventStructure, configs: &Configurations) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    out.push_str("  rankdir=BT;\n");
    for (i, x) in configs.iter().enumerate() {
        writeln!(out, "  c{i} [label={}];", quote(&s.show(x))).unwrap();
    }
    for c in &configs.covers {
        writeln!(
            out,
            "  c{} -> c{} [label={}];",
            c.from,
            c.to,
            quote(s.id(c.event))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
