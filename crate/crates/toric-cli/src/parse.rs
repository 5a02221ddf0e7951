//! Descriptor grammars for graphs and operators.
//!
//! Graphs: `path:N`, `cycle:N`, `star:N`, `complete:N`, `prufer:a,b,...`,
//! `edges:N;u-v,u-v,...`, `file:PATH`.
//!
//! Operators: `pro`, `tpro`, `cpro`, `c:K`, `tpro-pi:PERM`, `zeta:H`,
//! `toggles:i-j,i-j,...`.

use toric::{Graph, GraphFamily, Labeling, OperatorSpec};

fn err_at(text: &str, pos: usize, message: &str) -> String {
    format!("{text:?} at byte {pos}: {message}")
}

/// Parses a graph descriptor.
pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let text = text.trim();
    let (head, rest) = match text.split_once(':') {
        Some((head, rest)) => (head, rest),
        None => return Err(err_at(text, text.len(), "expected 'family:arguments'")),
    };
    let arg_pos = head.len() + 1;
    let family = |f: GraphFamily| -> Result<Graph, String> {
        let n: usize = rest
            .parse()
            .map_err(|_| err_at(text, arg_pos, "expected a vertex count"))?;
        Graph::generate(f, n).map_err(|e| e.to_string())
    };
    match head {
        "path" => family(GraphFamily::Path),
        "cycle" => family(GraphFamily::Cycle),
        "star" => family(GraphFamily::Star),
        "complete" => family(GraphFamily::Complete),
        "prufer" => {
            let seq = parse_usize_list(rest).map_err(|(off, m)| err_at(text, arg_pos + off, &m))?;
            Graph::from_prufer(&seq).map_err(|e| e.to_string())
        }
        "edges" => {
            let (n_text, pairs_text) = match rest.split_once(';') {
                Some(parts) => parts,
                None => return Err(err_at(text, arg_pos, "expected 'edges:N;u-v,...'")),
            };
            let n: usize = n_text
                .parse()
                .map_err(|_| err_at(text, arg_pos, "expected a vertex count"))?;
            let pairs_pos = arg_pos + n_text.len() + 1;
            let mut pairs = Vec::new();
            if !pairs_text.is_empty() {
                let mut offset = 0;
                for part in pairs_text.split(',') {
                    let pair = parse_pair(part, '-')
                        .map_err(|m| err_at(text, pairs_pos + offset, &m))?;
                    pairs.push(pair);
                    offset += part.len() + 1;
                }
            }
            Graph::from_edge_list(n, &pairs).map_err(|e| e.to_string())
        }
        "file" => {
            let contents = std::fs::read_to_string(rest)
                .map_err(|e| format!("cannot read {rest:?}: {e}"))?;
            Graph::from_edge_list_text(&contents).map_err(|e| format!("{rest}: {e}"))
        }
        other => Err(err_at(text, 0, &format!("unknown graph family {other:?}"))),
    }
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, (usize, String)> {
    let mut out = Vec::new();
    if text.is_empty() {
        return Ok(out);
    }
    let mut offset = 0;
    for part in text.split(',') {
        let value = part
            .trim()
            .parse()
            .map_err(|_| (offset, format!("expected an integer, got {part:?}")))?;
        out.push(value);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn parse_pair(text: &str, sep: char) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(sep)
        .ok_or_else(|| format!("expected 'a{sep}b', got {text:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad integer {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad integer {b:?}"))?;
    Ok((a, b))
}

/// Parses an operator descriptor for a graph on `n` vertices.
pub fn parse_operator(text: &str, n: usize) -> Result<OperatorSpec, String> {
    let text = text.trim();
    match text {
        "pro" => return Ok(OperatorSpec::Promotion),
        "tpro" => return Ok(OperatorSpec::ToricPromotion),
        "cpro" => return Ok(OperatorSpec::cpro()),
        _ => {}
    }
    let (head, rest) = match text.split_once(':') {
        Some(parts) => parts,
        None => return Err(err_at(text, 0, "unknown operator")),
    };
    let arg_pos = head.len() + 1;
    match head {
        "c" => {
            let k: i64 = rest
                .parse()
                .map_err(|_| err_at(text, arg_pos, "expected an integer shift"))?;
            Ok(OperatorSpec::CyclicShift(k))
        }
        "tpro-pi" => {
            let pi = Labeling::parse(rest, n)
                .map_err(|e| err_at(text, arg_pos, &e.to_string()))?;
            Ok(OperatorSpec::ToricPromotionPi(pi.forward().to_vec()))
        }
        "zeta" => {
            let h: usize = rest
                .parse()
                .map_err(|_| err_at(text, arg_pos, "expected an integer h"))?;
            OperatorSpec::zeta(n, h).map_err(|e| e.to_string())
        }
        "toggles" => {
            let mut parts = Vec::new();
            let mut offset = 0;
            for part in rest.split(',') {
                let (i, j) =
                    parse_pair(part, '-').map_err(|m| err_at(text, arg_pos + offset, &m))?;
                parts.push(OperatorSpec::Toggle(i, j));
                offset += part.len() + 1;
            }
            if parts.len() == 1 {
                Ok(parts.pop().expect("one element"))
            } else {
                Ok(OperatorSpec::Composition(parts))
            }
        }
        other => Err(err_at(text, 0, &format!("unknown operator {other:?}"))),
    }
}
