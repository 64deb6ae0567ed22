//! Line-oriented text format.
//!
//! ```text
//! N 3
//! E sigma=1 T 2:1 H 0:1
//! E sigma=1 T 0 H 1,2 hom
//! ```
//!
//! A trailing `hom` replaces both weight lists with homogeneous weights; ids
//! are then written without `:weight`. An empty side is written as `-`.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{DirectedHyperedge, DirectedHypergraph, HypergraphError, NodeId};

fn perr(line: usize, msg: impl Into<String>) -> HypergraphError {
    HypergraphError::Parse { line, msg: msg.into() }
}

fn parse_side(
    tok: &str,
    hom: bool,
    line: usize,
) -> Result<(Vec<NodeId>, Vec<f64>), HypergraphError> {
    if tok == "-" {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut ids = Vec::new();
    let mut w = Vec::new();
    for item in tok.split(',') {
        match (item.split_once(':'), hom) {
            (None, true) => {
                ids.push(item.parse().map_err(|_| perr(line, format!("bad node id `{item}`")))?)
            }
            (Some((id, wt)), false) => {
                ids.push(id.parse().map_err(|_| perr(line, format!("bad node id `{id}`")))?);
                w.push(wt.parse().map_err(|_| perr(line, format!("bad weight `{wt}`")))?);
            }
            (None, false) => return Err(perr(line, format!("missing weight for `{item}`"))),
            (Some(_), true) => return Err(perr(line, "explicit weight on a `hom` line")),
        }
    }
    Ok((ids, w))
}

/// Parses the text format. Parallel hyperedges are allowed when `allow_multi` is set.
pub fn parse_hypergraph(text: &str, allow_multi: bool) -> Result<DirectedHypergraph, HypergraphError> {
    let mut n_nodes = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks[0] {
            "N" => {
                if n_nodes.is_some() {
                    return Err(perr(line, "repeated N header"));
                }
                let n = toks.get(1).ok_or_else(|| perr(line, "missing node count"))?;
                n_nodes = Some(n.parse::<usize>().map_err(|_| perr(line, "bad node count"))?);
            }
            "E" => {
                if n_nodes.is_none() {
                    return Err(perr(line, "hyperedge before N header"));
                }
                let hom = toks.last() == Some(&"hom");
                let body = if hom { &toks[1..toks.len() - 1] } else { &toks[1..] };
                let [sigma, t, tails, h, heads] = body else {
                    return Err(perr(line, "expected `E sigma=<g> T <..> H <..> [hom]`"));
                };
                let sigma = sigma
                    .strip_prefix("sigma=")
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| perr(line, "bad sigma"))?;
                if *t != "T" || *h != "H" {
                    return Err(perr(line, "expected T and H markers"));
                }
                let (tails, alpha) = parse_side(tails, hom, line)?;
                let (heads, beta) = parse_side(heads, hom, line)?;
                let edge = if hom {
                    DirectedHyperedge::homogeneous(tails, heads, sigma)
                } else {
                    DirectedHyperedge::new(tails, heads, alpha, beta, sigma)
                };
                edges.push(edge.map_err(|e| perr(line, e.to_string()))?);
            }
            other => return Err(perr(line, format!("unknown record `{other}`"))),
        }
    }
    let n = n_nodes.ok_or_else(|| perr(0, "missing N header"))?;
    if allow_multi {
        DirectedHypergraph::with_multi_edges(n, edges)
    } else {
        DirectedHypergraph::new(n, edges)
    }
}

fn write_side(out: &mut String, ids: &[NodeId], w: &[f64]) {
    if ids.is_empty() {
        out.push('-');
        return;
    }
    for (k, (id, wt)) in ids.iter().zip(w).enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{id}:{wt:.16e}");
    }
}

/// Writes the text format with explicit weights.
pub fn write_hypergraph(h: &DirectedHypergraph) -> String {
    let mut out = format!("N {}\n", h.n_nodes());
    for e in h.edges() {
        let _ = write!(out, "E sigma={:.16e} T ", e.sigma());
        write_side(&mut out, e.tails(), e.alpha());
        out.push_str(" H ");
        write_side(&mut out, e.heads(), e.beta());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::example2;
    use proptest::prelude::*;

    #[test]
    fn parses_example2() {
        let text = "# example\nN 3\nE sigma=1 T 2 H 0 hom\nE sigma=1 T 0:1 H 1:0.5,2:0.5\n";
        assert_eq!(parse_hypergraph(text, false).unwrap(), example2());
    }

    #[test]
    fn rejects_overlap_with_line_number() {
        let err = parse_hypergraph("N 2\nE sigma=1 T 0 H 0,1 hom\n", false).unwrap_err();
        assert!(matches!(err, HypergraphError::Parse { line: 2, .. }));
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse_hypergraph("E sigma=1 T 0 H 1 hom\n", false).is_err());
    }

    proptest! {
        #[test]
        fn write_parse_round_trip(seed in 0u64..500, n in 3usize..25) {
            let params = crate::hypergraph::ErParams::new(n, 0.1, 4, 1.5);
            let h = crate::hypergraph::er_hypergraph(&params, seed).unwrap();
            let back = parse_hypergraph(&write_hypergraph(&h), false).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
