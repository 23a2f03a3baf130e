use super::{GraphError, Tree};

/// Parses a whitespace-separated edge list into a validated [`Tree`].
///
/// Blank lines and lines starting with `#` are skipped. Labels are positive
/// integers and need not be contiguous; they are remapped to `0..n` in
/// increasing label order.
pub fn parse_edge_list(text: &str) -> Result<Tree, GraphError> {
    let mut raw = Vec::new();
    let mut lines = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let a = parse_label(fields.next(), lineno)?;
        let b = parse_label(fields.next(), lineno)?;
        if let Some(extra) = fields.next() {
            return Err(GraphError::Syntax {
                line: lineno,
                message: format!("unexpected trailing field {extra:?}"),
            });
        }
        if a == b {
            return Err(GraphError::SelfLoop {
                label: a,
                line: Some(lineno),
            });
        }
        raw.push((a, b));
        lines.push(Some(lineno));
    }

    let mut labels: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    labels.sort_unstable();
    labels.dedup();
    let index = |l: u64| labels.binary_search(&l).expect("label collected above");
    let edges: Vec<_> = raw.iter().map(|&(a, b)| (index(a), index(b))).collect();
    Tree::build(labels, &edges, &lines)
}

fn parse_label(field: Option<&str>, line: usize) -> Result<u64, GraphError> {
    let field = field.ok_or_else(|| GraphError::Syntax {
        line,
        message: "expected two vertex labels".into(),
    })?;
    match field.parse::<u64>() {
        Ok(0) | Err(_) => Err(GraphError::Syntax {
            line,
            message: format!("vertex label must be a positive integer, got {field:?}"),
        }),
        Ok(v) => Ok(v),
    }
}
