//! SNDlib native plain-text format: the NODES and LINKS sections.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::network::{Arc, Network, Node};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(tok: &str, line: usize, what: &str) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

/// Splits a line into tokens, making parentheses tokens of their own.
fn tokens(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() || c == '(' || c == ')' {
            if let Some(s) = start.take() {
                out.push(&line[s..i]);
            }
            if !c.is_whitespace() {
                out.push(&line[i..i + 1]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&line[s..]);
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Nodes,
    Links,
    Other,
}

/// Parses an SNDlib native network file.
///
/// Each link becomes two arcs, `source → target` then `target → source`,
/// with the pre-installed capacity when positive and otherwise the capacity
/// of the first listed module.
pub fn parse_sndlib(text: &str) -> Result<Network> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut section = Section::None;
    let mut seen_nodes = false;
    let mut seen_links = false;
    let mut depth = 0i32;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('?') {
            continue;
        }
        let toks = tokens(line);
        if section == Section::None {
            if toks.len() == 2 && toks[1] == "(" {
                section = match toks[0] {
                    "NODES" => {
                        seen_nodes = true;
                        Section::Nodes
                    }
                    "LINKS" => {
                        seen_links = true;
                        Section::Links
                    }
                    _ => {
                        depth = 1;
                        Section::Other
                    }
                };
                continue;
            }
            return Err(parse_err(line_no, format!("unexpected `{line}` outside a section")));
        }
        if section == Section::Other {
            // skip nested blocks such as ADMISSIBLE_PATHS
            for t in &toks {
                match *t {
                    "(" => depth += 1,
                    ")" => depth -= 1,
                    _ => {}
                }
            }
            if depth == 0 {
                section = Section::None;
            }
            continue;
        }
        if toks == [")"] {
            section = Section::None;
            continue;
        }
        match section {
            Section::Nodes => {
                let name = toks[0];
                if toks.len() < 5 || toks[1] != "(" || toks[4] != ")" {
                    return Err(Error::MissingCoordinates(name.to_string()));
                }
                let x = number(toks[2], line_no, "longitude")?;
                let y = number(toks[3], line_no, "latitude")?;
                if index.insert(name.to_string(), nodes.len()).is_some() {
                    return Err(parse_err(line_no, format!("duplicate node `{name}`")));
                }
                nodes.push(Node {
                    id: nodes.len(),
                    x,
                    y,
                    name: Some(name.to_string()),
                });
            }
            Section::Links => {
                let name = toks[0];
                if toks.len() < 5 || toks[1] != "(" || toks[4] != ")" {
                    return Err(parse_err(line_no, format!("link `{name}` needs `( source target )`")));
                }
                let endpoint = |t: &str| {
                    index
                        .get(t)
                        .copied()
                        .ok_or_else(|| parse_err(line_no, format!("unknown node `{t}`")))
                };
                let (src, dst) = (endpoint(toks[2])?, endpoint(toks[3])?);
                let pre_installed = match toks.get(5) {
                    Some(t) if *t != "(" => number(t, line_no, "capacity")?,
                    _ => 0.0,
                };
                let module = toks[5..]
                    .iter()
                    .position(|t| *t == "(")
                    .and_then(|p| toks.get(5 + p + 1))
                    .filter(|t| **t != ")")
                    .map(|t| number(t, line_no, "module capacity"))
                    .transpose()?;
                let capacity = if pre_installed > 0.0 {
                    pre_installed
                } else {
                    match module {
                        Some(c) if c > 0.0 => c,
                        _ => return Err(Error::MissingCapacity(name.to_string())),
                    }
                };
                for (tail, head) in [(src, dst), (dst, src)] {
                    arcs.push(Arc {
                        id: arcs.len(),
                        tail,
                        head,
                        capacity,
                    });
                }
            }
            Section::Other | Section::None => unreachable!(),
        }
    }
    if section != Section::None {
        return Err(parse_err(text.lines().count(), "unterminated section"));
    }
    if !seen_nodes {
        return Err(parse_err(0, "missing NODES section"));
    }
    if !seen_links {
        return Err(parse_err(0, "missing LINKS section"));
    }
    Network::new(nodes, arcs)
}

/// Writes a network whose arcs come in reverse pairs `(2i, 2i+1)` of equal
/// capacity, as produced by [`parse_sndlib`].
pub fn write_sndlib(net: &Network) -> Result<String> {
    if !net.arc_count().is_multiple_of(2) {
        return Err(Error::InvalidInput("arcs must come in reverse pairs".into()));
    }
    let name = |v: usize| net.nodes()[v].name.clone().unwrap_or_else(|| format!("N{v}"));
    let mut out = String::from("?SNDlib native format; type: network; version: 1.0\n\nNODES (\n");
    for n in net.nodes() {
        let _ = writeln!(out, "  {} ( {:?} {:?} )", name(n.id), n.x, n.y);
    }
    out.push_str(")\n\nLINKS (\n");
    for pair in net.arcs().chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.tail != b.head || a.head != b.tail || a.capacity != b.capacity {
            return Err(Error::InvalidInput(format!(
                "arcs {} and {} are not a reverse pair",
                a.id, b.id
            )));
        }
        let _ = writeln!(
            out,
            "  L{} ( {} {} ) {:?} 0.0 0.0 0.0 ( )",
            a.id / 2,
            name(a.tail),
            name(a.head),
            a.capacity
        );
    }
    out.push_str(")\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
?SNDlib native format; type: network; version: 1.0
# network tiny
NODES (
  A ( 1.5 2.0 )
  B ( 3.0 4.0 )
)
LINKS (
  A_B ( A B ) 0.00 0.00 0.00 0.00 ( 40.00 1.00 80.00 2.00 )
)
DEMANDS (
  D1 ( A B ) 1 1.00 UNLIMITED
)
ADMISSIBLE_PATHS (
  D1 (
    P_0 ( A_B )
  )
)
";

    #[test]
    fn minimal_file() {
        let net = parse_sndlib(MINIMAL).unwrap();
        assert_eq!(net.node_count(), 2);
        assert_eq!(net.arc_count(), 2);
        assert!(net.arcs().iter().all(|a| a.capacity == 40.0));
        assert_eq!((net.tail(0), net.head(0)), (0, 1));
        assert_eq!((net.tail(1), net.head(1)), (1, 0));
        assert_eq!(net.nodes()[1].name.as_deref(), Some("B"));
    }

    #[test]
    fn preinstalled_capacity_wins() {
        let text = MINIMAL.replace("A_B ( A B ) 0.00", "A_B ( A B ) 9920.00");
        assert_eq!(parse_sndlib(&text).unwrap().arc(0).capacity, 9920.0);
    }

    #[test]
    fn errors() {
        let no_links: String = MINIMAL.lines().take(6).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_sndlib(&no_links), Err(Error::Parse { .. })));

        let text = MINIMAL.replace("B ( 3.0 4.0 )", "B");
        assert!(matches!(parse_sndlib(&text), Err(Error::MissingCoordinates(n)) if n == "B"));

        let text = MINIMAL.replace("( 40.00 1.00 80.00 2.00 )", "( )");
        assert!(matches!(parse_sndlib(&text), Err(Error::MissingCapacity(n)) if n == "A_B"));

        let text = MINIMAL.replace("( A B ) 0.00", "( A C ) 0.00");
        assert!(matches!(parse_sndlib(&text), Err(Error::Parse { line: 8, .. })));
    }

    #[test]
    fn roundtrip() {
        let net = parse_sndlib(MINIMAL).unwrap();
        let text = write_sndlib(&net).unwrap();
        assert_eq!(parse_sndlib(&text).unwrap(), net);
    }

    #[test]
    fn tokenizer_splits_parentheses() {
        assert_eq!(tokens("A(1 2)"), vec!["A", "(", "1", "2", ")"]);
    }
}
