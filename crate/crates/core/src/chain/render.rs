//! Text rendering of proof trees in the traditional chain layout:
//! one line per component, two-space indents per depth,
//! `p^a -> q1 * q2^e ...`, with `xs` marking the prime whose count
//! overflowed and `overabundant` marking abundant-divisor leaves.

use super::state::ChainExponent;
use super::{ContradictionCode, ProofNode, ProofTree, Terminal};
use std::collections::BTreeMap;

pub fn render_text(tree: &ProofTree) -> String {
    let mut out = String::new();
    for root in tree.roots().map(|n| n.id).collect::<Vec<_>>() {
        render_node(tree, root, 0, &mut RenderPath::default(), &mut out);
    }
    out
}

/// Counts and exact exponents carried down the path, so the renderer can
/// point at the prime that made M2 fire.
#[derive(Default, Clone)]
struct RenderPath {
    counts: BTreeMap<u64, u32>,
    exact: BTreeMap<u64, u32>,
}

fn render_node(
    tree: &ProofTree,
    id: usize,
    depth: usize,
    path: &mut RenderPath,
    out: &mut String,
) {
    let node = &tree.nodes[id];
    let mut local = path.clone();
    if let ChainExponent::Finite(a) = node.exponent {
        local.exact.insert(node.prime, a);
        for &(q, e) in &node.sigma_factors {
            if q != 2 {
                *local.counts.entry(q).or_insert(0) += e;
            }
        }
    }

    out.push_str(&"  ".repeat(depth));
    out.push_str(&component_label(node));
    if !node.sigma_factors.is_empty() {
        out.push_str(" -> ");
        let excess = if node.terminal == Some(Terminal::Code(ContradictionCode::M2)) {
            excess_prime(&local)
        } else {
            None
        };
        let rendered: Vec<String> = node
            .sigma_factors
            .iter()
            .map(|&(q, e)| {
                let mut s = if e == 1 {
                    q.to_string()
                } else {
                    format!("{q}^{e}")
                };
                if excess == Some(q) {
                    s.push_str("xs");
                }
                s
            })
            .collect();
        out.push_str(&rendered.join(" * "));
    }
    match node.terminal {
        Some(Terminal::Code(ContradictionCode::A)) => out.push_str(" overabundant"),
        Some(Terminal::Code(ContradictionCode::M2)) => {
            if excess_prime(&local).is_none() {
                // parity failure rather than a count overflow
                out.push_str(" [M2]");
            }
        }
        Some(Terminal::Code(code)) => {
            out.push_str(" [");
            out.push_str(code.tag());
            out.push(']');
        }
        Some(Terminal::Witness) => out.push_str(" [witness!]"),
        Some(Terminal::BLimited) => out.push_str(" [B-limited]"),
        Some(Terminal::Budget) => out.push_str(" [budget]"),
        None => {}
    }
    out.push('\n');

    for child in tree.children(id).map(|n| n.id).collect::<Vec<_>>() {
        render_node(tree, child, depth + 1, &mut local, out);
    }
}

fn component_label(node: &ProofNode) -> String {
    match node.exponent {
        ChainExponent::Finite(1) => node.prime.to_string(),
        ChainExponent::Finite(a) => format!("{}^{}", node.prime, a),
        ChainExponent::Inf => format!("{}^inf", node.prime),
    }
}

fn excess_prime(path: &RenderPath) -> Option<u64> {
    path.exact
        .iter()
        .find(|(p, a)| path.counts.get(p).copied().unwrap_or(0) > **a)
        .map(|(p, _)| *p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{run_chain, ChainConfig};

    #[test]
    fn renders_single_component_line() {
        let config = ChainConfig {
            b: 10_000,
            ..ChainConfig::new(2)
        };
        let tree = run_chain(&config).unwrap();
        let text = render_text(&tree);
        let first = text.lines().next().unwrap();
        assert!(first.starts_with("3^2 -> 13"), "got: {first}");
    }

    #[test]
    fn renders_worked_chain_lines() {
        let config = ChainConfig {
            t: 5,
            b: 200_000_000,
            node_budget: 400,
            ..ChainConfig::new(5)
        };
        let tree = run_chain(&config).unwrap();
        let text = render_text(&tree);
        assert!(text.contains("3^6 -> 1093"), "missing opening line:\n{text}");
        assert!(text.contains("1093 -> 2 * 547"), "missing 1093 line:\n{text}");
        assert!(
            text.contains("547^2 -> 3 * 163 * 613"),
            "missing 547^2 line:\n{text}"
        );
    }

    #[test]
    fn indentation_tracks_depth() {
        // small t trees die at the roots (the large-prime floors leave no
        // room), so use a config that actually branches
        let config = ChainConfig {
            t: 5,
            b: 200_000_000,
            node_budget: 400,
            ..ChainConfig::new(5)
        };
        let tree = run_chain(&config).unwrap();
        let text = render_text(&tree);
        // children of a root are indented one step, grandchildren two
        assert!(text.lines().any(|l| l.starts_with("  ") && !l.starts_with("    ")));
        assert!(text.lines().any(|l| l.starts_with("    ")));
    }
}
