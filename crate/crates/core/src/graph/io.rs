//! Text format: a header line `n m W`, then `m` lines `u v w` with 0-based
//! endpoints. Lines starting with `#` are ignored. Float weights are written
//! exactly as `num/den` with a power-of-two denominator.

use std::io::Write;
use std::path::Path;

use super::{Graph, WeightedGraph};
use crate::error::{CutQueryError, Result};

fn malformed(line: usize, reason: impl Into<String>) -> CutQueryError {
    CutQueryError::MalformedGraph { line, reason: reason.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<(usize, usize, String)> {
    let (ln, header) = lines.next().ok_or_else(|| malformed(1, "missing header `n m W`"))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    if tok.len() != 3 {
        return Err(malformed(ln, "header must be `n m W`"));
    }
    let n = tok[0].parse().map_err(|_| malformed(ln, "bad vertex count"))?;
    let m = tok[1].parse().map_err(|_| malformed(ln, "bad edge count"))?;
    Ok((n, m, tok[2].to_string()))
}

fn parse_endpoints(ln: usize, tok: &[&str], n: usize) -> Result<(usize, usize)> {
    let u: usize = tok[0].parse().map_err(|_| malformed(ln, "bad endpoint"))?;
    let v: usize = tok[1].parse().map_err(|_| malformed(ln, "bad endpoint"))?;
    if u >= n || v >= n {
        return Err(malformed(ln, format!("endpoint out of range for n={n}")));
    }
    Ok((u, v))
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut lines = content_lines(text);
    let (n, m, wmax) = parse_header(&mut lines)?;
    let wmax: u64 = wmax.parse().map_err(|_| malformed(1, "bad weight bound"))?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 3 {
            return Err(malformed(ln, "edge line must be `u v w`"));
        }
        let (u, v) = parse_endpoints(ln, &tok, n)?;
        let w: u64 = tok[2].parse().map_err(|_| malformed(ln, "bad weight"))?;
        if w == 0 || w > wmax {
            return Err(malformed(ln, format!("weight {w} outside 1..={wmax}")));
        }
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(malformed(0, format!("header promises {m} edges, found {}", edges.len())));
    }
    WeightedGraph::new_simple(n, edges)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(g: &WeightedGraph, mut out: impl Write) -> Result<()> {
    writeln!(out, "{} {} {}", g.n(), g.m(), g.max_weight())?;
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
    }
    Ok(())
}

/// Exact `num/den` rendering of a finite non-negative float.
pub fn format_dyadic(x: f64) -> String {
    assert!(x.is_finite() && x >= 0.0, "weight {x} is not a finite non-negative number");
    if x == 0.0 {
        return "0/1".to_string();
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    while mant % 2 == 0 && e < 0 {
        mant /= 2;
        e += 1;
    }
    if e >= 0 {
        format!("{}/1", (mant as u128) << e.min(64))
    } else {
        format!("{}/{}", mant, 1u128 << (-e).min(127))
    }
}

fn parse_ratio(ln: usize, s: &str) -> Result<f64> {
    match s.split_once('/') {
        Some((a, b)) => {
            let a: u128 = a.parse().map_err(|_| malformed(ln, "bad numerator"))?;
            let b: u128 = b.parse().map_err(|_| malformed(ln, "bad denominator"))?;
            if b == 0 {
                return Err(malformed(ln, "zero denominator"));
            }
            Ok(a as f64 / b as f64)
        }
        None => s.parse().map_err(|_| malformed(ln, "bad weight")),
    }
}

pub fn write_sparsifier(h: &Graph<f64>, mut out: impl Write) -> Result<()> {
    writeln!(out, "{} {} {}", h.n(), h.m(), format_dyadic(h.max_weight()))?;
    for e in h.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, format_dyadic(e.w))?;
    }
    Ok(())
}

pub fn parse_sparsifier(text: &str) -> Result<Graph<f64>> {
    let mut lines = content_lines(text);
    let (n, m, _) = parse_header(&mut lines)?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 3 {
            return Err(malformed(ln, "edge line must be `u v w`"));
        }
        let (u, v) = parse_endpoints(ln, &tok, n)?;
        edges.push((u, v, parse_ratio(ln, tok[2])?));
    }
    if edges.len() != m {
        return Err(malformed(0, format!("header promises {m} edges, found {}", edges.len())));
    }
    Graph::new_simple(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = WeightedGraph::new_simple(4, [(0, 1, 3), (2, 3, 1), (1, 2, 7)]).unwrap();
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let h = parse_graph(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(g.edges(), h.edges());
    }

    #[test]
    fn rejects_duplicates_and_loops() {
        assert!(matches!(parse_graph("3 2 1\n0 1 1\n1 0 1\n"), Err(CutQueryError::InvalidGraph(_))));
        assert!(parse_graph("3 1 1\n2 2 1\n").is_err());
        assert!(matches!(parse_graph("3 1 1\n0 1\n"), Err(CutQueryError::MalformedGraph { line: 2, .. })));
    }

    #[test]
    fn dyadic_is_exact() {
        for x in [1.0, 0.5, 3.75, 1.0 / 3.0, 1234.0625, 1e-3] {
            let s = format_dyadic(x);
            assert_eq!(parse_ratio(0, &s).unwrap(), x, "{s}");
        }
        assert_eq!(format_dyadic(6.0), "6/1");
        assert_eq!(format_dyadic(0.75), "3/4");
    }

    #[test]
    fn sparsifier_round_trip() {
        let h = Graph::new_simple(3, [(0, 1, 2.5), (1, 2, 1.0 / 3.0)]).unwrap();
        let mut buf = Vec::new();
        write_sparsifier(&h, &mut buf).unwrap();
        let back = parse_sparsifier(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.edges(), h.edges());
    }
}
