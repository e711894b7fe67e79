//! Flat text instance files.
//!
//! The format is line-oriented and diff-friendly: one directive per line,
//! `#` starts a comment, blank lines are ignored.
//!
//! ```text
//! left 3
//! right 1
//! k 2
//! weights 3 2 1
//! edge 0 0
//! edge 1 0
//! edge 2 0
//! ```
//!
//! All vertex indices are 0-based. [`Instance::to_text`] emits the canonical
//! form: the four header directives in the order above, then the edges in
//! ascending order, so parse → write round-trips to identical bytes.

use std::fs;
use std::path::Path;

use trobust_core::graph::{BipartiteGraph, WeightMap};
use trobust_core::Error as CoreError;

use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: BipartiteGraph,
    pub weights: WeightMap,
    pub k: usize,
}

impl Instance {
    pub fn new(graph: BipartiteGraph, weights: WeightMap, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Core(CoreError::Invalid("k must be positive".into())));
        }
        if weights.len() != graph.left_count() {
            return Err(Error::Core(CoreError::Invalid(format!(
                "{} weights for {} left vertices",
                weights.len(),
                graph.left_count()
            ))));
        }
        Ok(Instance { graph, weights, k })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut left: Option<usize> = None;
        let mut right: Option<usize> = None;
        let mut k: Option<usize> = None;
        let mut weights: Option<Vec<u64>> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();

        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let fail = |msg: String| Error::Usage(format!("line {line_no}: {msg}"));
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let directive = tokens.next().expect("non-empty line has a first token");
            let rest: Vec<&str> = tokens.collect();
            match directive {
                "left" | "right" | "k" => {
                    let slot = match directive {
                        "left" => &mut left,
                        "right" => &mut right,
                        _ => &mut k,
                    };
                    if slot.is_some() {
                        return Err(fail(format!("duplicate `{directive}`")));
                    }
                    let [value] = rest.as_slice() else {
                        return Err(fail(format!("`{directive}` takes one integer")));
                    };
                    *slot = Some(
                        value
                            .parse()
                            .map_err(|_| fail(format!("bad integer `{value}`")))?,
                    );
                }
                "weights" => {
                    if weights.is_some() {
                        return Err(fail("duplicate `weights`".into()));
                    }
                    let parsed = rest
                        .iter()
                        .map(|t| t.parse().map_err(|_| fail(format!("bad integer `{t}`"))))
                        .collect::<Result<Vec<u64>>>()?;
                    weights = Some(parsed);
                }
                "edge" => {
                    let [u, v] = rest.as_slice() else {
                        return Err(fail("`edge` takes two integers".into()));
                    };
                    let u = u.parse().map_err(|_| fail(format!("bad integer `{u}`")))?;
                    let v = v.parse().map_err(|_| fail(format!("bad integer `{v}`")))?;
                    edges.push((u, v));
                }
                other => return Err(fail(format!("unknown directive `{other}`"))),
            }
        }

        let require = |name: &str, value: Option<usize>| {
            value.ok_or_else(|| Error::Usage(format!("missing `{name}` line")))
        };
        let left = require("left", left)?;
        let right = require("right", right)?;
        let k = require("k", k)?;
        let weights = weights.ok_or_else(|| Error::Usage("missing `weights` line".into()))?;
        let graph = BipartiteGraph::new(left, right, edges)?;
        Instance::new(graph, WeightMap::new(weights), k)
    }

    pub fn parse_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(path.to_path_buf(), e))?;
        Instance::parse(&text).map_err(|e| match e {
            Error::Usage(msg) => Error::Usage(format!("{}: {msg}", path.display())),
            Error::Core(core) => Error::Usage(format!("{}: {core}", path.display())),
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let weights: Vec<String> =
            self.weights.as_slice().iter().map(u64::to_string).collect();
        let mut out = format!(
            "left {}\nright {}\nk {}\nweights {}\n",
            self.graph.left_count(),
            self.graph.right_count(),
            self.k,
            weights.join(" ")
        );
        for &(u, v) in self.graph.edges() {
            out.push_str(&format!("edge {u} {v}\n"));
        }
        out
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::Io(path.to_path_buf(), e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str = "left 3\nright 1\nk 2\nweights 3 2 1\nedge 0 0\nedge 1 0\nedge 2 0\n";

    #[test]
    fn round_trip_is_identity() {
        let inst = Instance::parse(STAR).unwrap();
        assert_eq!(inst.to_text(), STAR);
        assert_eq!(inst.graph.left_count(), 3);
        assert_eq!(inst.graph.right_count(), 1);
        assert_eq!(inst.k, 2);
        assert_eq!(inst.weights.as_slice(), &[3, 2, 1]);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# star\nleft 3\n\nright 1 # one hub\nk 2\nweights 3 2 1\nedge 0 0\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.graph.edges(), &[(0, 0)]);
    }

    #[test]
    fn parse_errors_carry_line_context() {
        let cases = [
            ("left 3\nleft 4\n", "line 2: duplicate `left`"),
            ("lift 3\n", "line 1: unknown directive `lift`"),
            ("left x\n", "line 1: bad integer `x`"),
            ("edge 0\n", "line 1: `edge` takes two integers"),
        ];
        for (text, expected) in cases {
            match Instance::parse(text) {
                Err(Error::Usage(msg)) => assert_eq!(msg, expected),
                other => panic!("expected usage error, got {other:?}"),
            }
        }
    }

    #[test]
    fn missing_directives_are_reported() {
        match Instance::parse("left 2\nright 1\nweights 0 0\n") {
            Err(Error::Usage(msg)) => assert_eq!(msg, "missing `k` line"),
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn structural_problems_come_from_the_core_types() {
        assert!(Instance::parse("left 1\nright 1\nk 1\nweights 0\nedge 5 0\n").is_err());
        assert!(Instance::parse("left 1\nright 1\nk 0\nweights 0\n").is_err());
        assert!(Instance::parse("left 2\nright 1\nk 1\nweights 0\n").is_err());
    }
}
