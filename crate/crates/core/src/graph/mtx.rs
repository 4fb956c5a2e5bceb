//! Matrix Market coordinate files, reduced to the sparsity structure of a
//! simple graph: the diagonal is dropped, nonzeros become 1, and the
//! pattern is symmetrized by union.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Pattern,
    Real,
    Integer,
}

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("graph")
        .to_string();
    parse_matrix_market(&text, path, name)
}

/// Parses Matrix Market text; `origin` only labels error messages.
pub fn parse_matrix_market(text: &str, origin: &Path, name: String) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_no, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(err(header_no, format!("bad header `{header}`")));
    }
    if tokens[2] != "coordinate" {
        return Err(err(header_no, format!("unsupported format `{}`", tokens[2])));
    }
    let field = match tokens[3].as_str() {
        "pattern" => Field::Pattern,
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        other => return Err(err(header_no, format!("unsupported field `{other}`"))),
    };
    match tokens[4].as_str() {
        "general" | "symmetric" | "skew-symmetric" => {}
        other => return Err(err(header_no, format!("unsupported symmetry `{other}`"))),
    }

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_no, size_line) = data.next().ok_or_else(|| err(header_no, "missing size line".into()))?;
    let sizes: Vec<usize> = size_line
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| err(size_no, format!("bad size line: {e}")))?;
    let [rows, cols, nnz] = sizes[..] else {
        return Err(err(size_no, "size line needs `rows cols nnz`".into()));
    };
    if rows != cols {
        return Err(err(size_no, format!("matrix is {rows}x{cols}, not square")));
    }
    if rows == 0 {
        return Err(err(size_no, "matrix has no rows".into()));
    }

    let expected_tokens = if field == Field::Pattern { 2 } else { 3 };
    let mut edges = Vec::with_capacity(nnz);
    let mut seen = 0;
    for (line_no, line) in data {
        seen += 1;
        if seen > nnz {
            return Err(err(line_no, format!("more than the declared {nnz} entries")));
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != expected_tokens {
            return Err(err(line_no, format!("expected {expected_tokens} tokens, got {}", parts.len())));
        }
        let index = |s: &str| -> Result<usize> {
            let i: usize = s.parse().map_err(|_| err(line_no, format!("bad index `{s}`")))?;
            if i == 0 || i > rows {
                return Err(err(line_no, format!("index {i} outside 1..={rows}")));
            }
            Ok(i - 1)
        };
        let (i, j) = (index(parts[0])?, index(parts[1])?);
        let nonzero = match field {
            Field::Pattern => true,
            Field::Real | Field::Integer => {
                let v: f64 = parts[2]
                    .parse()
                    .map_err(|_| err(line_no, format!("bad value `{}`", parts[2])))?;
                v != 0.0
            }
        };
        if nonzero && i != j {
            edges.push((i, j));
        }
    }
    if seen != nnz {
        return Err(err(text.lines().count(), format!("declared {nnz} entries, found {seen}")));
    }
    Graph::new(name, rows, edges)
}

/// Writes `g` as a symmetric pattern matrix (lower triangle, 1-based).
pub fn write_matrix_market(g: &Graph, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate pattern symmetric")?;
    writeln!(out, "% {}", g.name())?;
    writeln!(out, "{} {} {}", g.n(), g.n(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", v + 1, u + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Graph> {
        parse_matrix_market(text, Path::new("test.mtx"), "test".into())
    }

    #[test]
    fn binarizes_symmetrizes_and_drops_diagonal() {
        let g = parse(
            "%%MatrixMarket matrix coordinate real general\n% comment\n4 4 6\n1 1 5.0\n2 1 -3.5\n1 2 2.0\n3 4 1e-3\n4 4 1\n2 3 0\n",
        )
        .unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
    }

    #[test]
    fn diagonal_only_gives_edgeless_graph() {
        let g = parse("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 3\n1 1\n2 2\n3 3\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 0));
    }

    #[test]
    fn integer_field_accepted_complex_rejected() {
        assert!(parse("%%MatrixMarket matrix coordinate integer symmetric\n2 2 1\n2 1 7\n").is_ok());
        assert!(parse("%%MatrixMarket matrix coordinate complex general\n2 2 1\n2 1 1 0\n").is_err());
        assert!(parse("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n").is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n4 1\n").unwrap_err();
        match e {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 4);
                assert!(message.contains("outside"), "{message}");
            }
            other => panic!("unexpected error {other}"),
        }
        assert!(matches!(parse("garbage\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("%%MatrixMarket matrix coordinate pattern general\n3 4 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn write_then_parse_round_trips() {
        let g = Graph::new("w", 5, [(0, 4), (1, 2), (3, 4), (0, 1)]).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&g, &mut buf).unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.edges(), g.edges());
    }
}
