//! Plain-text network files.
//!
//! ```text
//! # comment
//! nodes=4 arcs=5 source=1 sink=4
//! 1 2 0.8
//! 1 3 0.9
//! ...
//! ```
//!
//! Arc `k` is the `k`-th non-comment line after the header. `source` and
//! `sink` may be omitted and default to 1 and `n`; any other value is
//! rejected.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{ParseError, ParseErrorKind};
use crate::network::{Arc, BinaryStateNetwork};

/// Largest node count accepted from a file.
pub const MAX_NODES: usize = 1 << 20;

pub fn parse_network(text: &str) -> Result<BinaryStateNetwork, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: text.lines().count().max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    let (nodes, expected) = parse_header(header).map_err(|kind| ParseError {
        line: header_line,
        kind,
    })?;

    let mut arcs = Vec::with_capacity(expected.min(4096));
    let mut seen = HashSet::new();
    for (line, body) in lines {
        if arcs.len() == expected {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::ArcCountMismatch {
                    expected,
                    found: arcs.len() + 1,
                },
            });
        }
        let arc = parse_arc(body, nodes).map_err(|kind| ParseError { line, kind })?;
        if !seen.insert((arc.tail, arc.head)) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::DuplicateArc(arc.tail, arc.head),
            });
        }
        arcs.push(arc);
    }
    if arcs.len() != expected {
        return Err(ParseError {
            line: text.lines().count().max(1),
            kind: ParseErrorKind::ArcCountMismatch {
                expected,
                found: arcs.len(),
            },
        });
    }
    // Every arc has been checked above, so construction cannot fail.
    Ok(BinaryStateNetwork::new(nodes, arcs).expect("validated arcs"))
}

fn parse_header(header: &str) -> Result<(usize, usize), ParseErrorKind> {
    let bad = |msg: &str| ParseErrorKind::MalformedHeader(msg.to_string());
    let (mut nodes, mut arcs, mut source, mut sink) = (None, None, None, None);
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| bad(&format!("expected key=value, got {token:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| bad(&format!("{key} is not a non-negative integer")))?;
        let slot = match key {
            "nodes" => &mut nodes,
            "arcs" => &mut arcs,
            "source" => &mut source,
            "sink" => &mut sink,
            _ => return Err(bad(&format!("unknown key {key:?}"))),
        };
        if slot.replace(value).is_some() {
            return Err(bad(&format!("{key} given twice")));
        }
    }
    let nodes = nodes.ok_or_else(|| bad("missing nodes="))?;
    let arcs = arcs.ok_or_else(|| bad("missing arcs="))?;
    if !(2..=MAX_NODES).contains(&nodes) {
        return Err(bad(&format!("nodes must be in 2..={MAX_NODES}")));
    }
    if let Some(s) = source.filter(|&s| s != 1) {
        return Err(ParseErrorKind::TerminalNotCanonical {
            field: "source",
            value: s,
        });
    }
    if let Some(t) = sink.filter(|&t| t != nodes) {
        return Err(ParseErrorKind::TerminalNotCanonical {
            field: "sink",
            value: t,
        });
    }
    Ok((nodes, arcs))
}

fn parse_arc(body: &str, nodes: usize) -> Result<Arc, ParseErrorKind> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    let [tail, head, p] = fields[..] else {
        return Err(ParseErrorKind::MalformedArc(format!(
            "expected `<tail> <head> <p>`, got {} fields",
            fields.len()
        )));
    };
    let node = |s: &str| -> Result<usize, ParseErrorKind> {
        let v: usize = s
            .parse()
            .map_err(|_| ParseErrorKind::MalformedArc(format!("bad node index {s:?}")))?;
        if v == 0 || v > nodes {
            return Err(ParseErrorKind::NodeOutOfRange { index: v, n: nodes });
        }
        Ok(v)
    };
    let (tail, head) = (node(tail)?, node(head)?);
    let prob: f64 = p
        .parse()
        .map_err(|_| ParseErrorKind::MalformedArc(format!("bad probability {p:?}")))?;
    if !(0.0..=1.0).contains(&prob) {
        return Err(ParseErrorKind::ProbabilityOutOfRange(p.to_string()));
    }
    if tail == head {
        return Err(ParseErrorKind::SelfLoop(tail));
    }
    Ok(Arc::new(tail, head, prob))
}

/// Renders `net` in the file format. Probabilities use the shortest decimal
/// that parses back to the same `f64`.
pub fn write_network(net: &BinaryStateNetwork) -> String {
    let mut out = String::new();
    let n = net.node_count();
    let _ = writeln!(out, "nodes={n} arcs={} source=1 sink={n}", net.arc_count());
    for a in net.arcs() {
        let _ = writeln!(out, "{} {} {}", a.tail, a.head, a.p);
    }
    out
}
