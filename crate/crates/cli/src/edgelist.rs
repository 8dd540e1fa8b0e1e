//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` with
//! 0-based vertex ids.  Lines starting with `#` are comments; parsing
//! reports the offending line number on malformed input.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn fail(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Parses an edge-list document into the vertex count and edge pairs.
pub fn parse(text: &str) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let a = fields.next();
        let b = fields.next();
        if fields.next().is_some() {
            return Err(fail(line_no, format!("expected two fields, got more: {line:?}")));
        }
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(fail(line_no, format!("expected two fields: {line:?}"))),
        };
        let a: usize = a
            .parse()
            .map_err(|_| fail(line_no, format!("not a non-negative integer: {a:?}")))?;
        let b: usize = b
            .parse()
            .map_err(|_| fail(line_no, format!("not a non-negative integer: {b:?}")))?;
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(fail(
                        line_no,
                        format!("more than the declared m = {m} edges"),
                    ));
                }
                if a >= n || b >= n {
                    return Err(fail(
                        line_no,
                        format!("edge ({a}, {b}) out of range for n = {n}"),
                    ));
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| fail(last_line.max(1), "missing `n m` header line"))?;
    if edges.len() != m {
        return Err(fail(
            last_line.max(1),
            format!("declared m = {m} edges but found {}", edges.len()),
        ));
    }
    Ok((n, edges))
}

/// Renders an edge-list document; `comments` become leading `#` lines.
/// ASCII with LF line endings, space separated.
pub fn write(n: usize, edges: &[(usize, usize)], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("{} {}\n", n, edges.len()));
    for &(u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_edges() {
        let text = "# a triangle\n3 3\n0 1\n\n1 2\n0 2\n";
        let (n, edges) = parse(text).unwrap();
        assert_eq!(n, 3);
        assert_eq!(edges, vec![(0, 1), (1, 2), (0, 2)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse("3 2\n0 1\nx y\n").unwrap_err().line, 3);
        assert_eq!(parse("3 1\n0 7\n").unwrap_err().line, 2);
        assert_eq!(parse("3 2\n0 1\n").unwrap_err().line, 2);
        assert_eq!(parse("3 1\n0 1\n1 2\n").unwrap_err().line, 3);
        assert_eq!(parse("1 2 3\n").unwrap_err().line, 1);
        assert!(parse("").unwrap_err().message.contains("header"));
    }

    #[test]
    fn round_trips() {
        let text = write(4, &[(0, 1), (2, 3)], &["hello".into()]);
        assert_eq!(text, "# hello\n4 2\n0 1\n2 3\n");
        let (n, edges) = parse(&text).unwrap();
        assert_eq!((n, edges), (4, vec![(0, 1), (2, 3)]));
    }
}
