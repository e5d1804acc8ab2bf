use std::fmt::Write;

use itertools::Itertools;

use crate::error::Result;
use crate::guard::SizeGuards;
use crate::perm::{Permutation, Transposition};

fn one_line(p: &Permutation) -> String {
    p.images().iter().join("")
}

/// DOT export of the Cayley graph of `S(d)` generated by all
/// transpositions, with each edge labelled by the colour of its
/// transposition.  Vertex ids are one-line strings like "2314";
/// vertex and edge order are deterministic.
pub fn cayley_dot_export(degree: usize, guards: &SizeGuards) -> Result<String> {
    guards.check_cayley_degree(degree)?;
    let mut out = String::new();
    writeln!(out, "graph cayley_s{degree} {{").unwrap();
    for p in Permutation::all(degree) {
        writeln!(out, "  \"{}\";", one_line(&p)).unwrap();
    }
    for p in Permutation::all(degree) {
        let from = one_line(&p);
        for step in Transposition::all(degree) {
            let mut q = p.clone();
            q.right_mul_transposition(step);
            let to = one_line(&q);
            if from < to {
                writeln!(out, "  \"{from}\" -- \"{to}\" [label={}];", step.colour()).unwrap();
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn counts(dot: &str) -> (usize, usize) {
        let vertices = dot.lines().filter(|l| l.ends_with("\";")).count();
        let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
        (vertices, edges)
    }

    #[test]
    fn small_graphs_have_expected_sizes() {
        let g = SizeGuards::default();
        assert_eq!(counts(&cayley_dot_export(2, &g).unwrap()), (2, 1));
        assert_eq!(counts(&cayley_dot_export(3, &g).unwrap()), (6, 9));
        assert_eq!(counts(&cayley_dot_export(4, &g).unwrap()), (24, 72));
    }

    #[test]
    fn degree_two_edge_is_labelled() {
        let dot = cayley_dot_export(2, &SizeGuards::default()).unwrap();
        assert!(dot.contains("\"12\" -- \"21\" [label=2];"));
        assert!(dot.starts_with("graph cayley_s2 {"));
    }

    #[test]
    fn export_is_deterministic() {
        let g = SizeGuards::default();
        assert_eq!(
            cayley_dot_export(4, &g).unwrap(),
            cayley_dot_export(4, &g).unwrap()
        );
    }

    #[test]
    fn oversize_degree_is_rejected() {
        assert!(matches!(
            cayley_dot_export(7, &SizeGuards::default()),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
