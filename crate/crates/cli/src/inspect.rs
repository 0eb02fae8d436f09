//! Human-readable dump of a tree snapshot.

use std::path::Path;

use anyhow::{Context, Result};
use cobweb::{AttributeStats, ConceptNode, ConceptTree};

pub fn inspect(path: &Path, top: usize) -> Result<String> {
    let bytes =
        std::fs::read(path).with_context(|| format!("reading snapshot {}", path.display()))?;
    let tree = ConceptTree::<f64>::restore(&bytes)
        .with_context(|| format!("parsing snapshot {}", path.display()))?;
    let mut out = format!(
        "tree: {} nodes, {} instances, alpha {}, max_nodes {}\n",
        tree.node_count(),
        tree.training_count(),
        tree.alpha(),
        tree.max_nodes()
    );
    dump(tree.root(), tree.schema(), 0, top, &mut out);
    Ok(out)
}

fn dump(
    node: &ConceptNode<f64>,
    schema: &cobweb::AttributeSchema,
    depth: usize,
    top: usize,
    out: &mut String,
) {
    let mut parts: Vec<String> = Vec::new();
    for id in schema.attr_ids() {
        match node.stats.attr(id) {
            AttributeStats::Categorical(counts) => {
                if counts.total() == 0 {
                    continue;
                }
                let mut values: Vec<(u32, u64)> = counts.iter().collect();
                values.sort_by_key(|&(v, n)| (std::cmp::Reverse(n), v));
                let shown: Vec<String> = values
                    .iter()
                    .take(top)
                    .map(|(v, n)| format!("{}\u{d7}{n}", schema.value_name(id, *v)))
                    .collect();
                let more = if values.len() > top { ", \u{2026}" } else { "" };
                parts.push(format!("{}: {}{more}", schema.name(id), shown.join(", ")));
            }
            AttributeStats::Gaussian(g) => {
                if g.n() == 0 {
                    continue;
                }
                parts.push(format!(
                    "{}: n={} mean={:.4}",
                    schema.name(id),
                    g.n(),
                    g.mean()
                ));
            }
        }
    }
    out.push_str(&format!(
        "{}#{} n={} | {}\n",
        "  ".repeat(depth),
        node.id.0,
        node.count(),
        parts.join(" | ")
    ));
    for child in &node.children {
        dump(child, schema, depth + 1, top, out);
    }
}
