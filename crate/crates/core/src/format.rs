//! Text format for path families.
//!
//! ```text
//! D 0000 0010 0001
//! # trace: n=4 case=L8.1 t=0000 roles=0,1,2 variant=literal
//! P 0010 0000 0001
//! ```

use crate::cube::Vertex;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyText {
    pub terminals: [Vertex; 3],
    pub paths: Vec<Vec<Vertex>>,
    /// Comment lines with the leading `#` and one space stripped.
    pub comments: Vec<String>,
}

pub fn write_family(
    bits: u32,
    terminals: [Vertex; 3],
    paths: &[Vec<Vertex>],
    comments: &[String],
) -> String {
    let mut out = String::new();
    out.push('D');
    for t in terminals {
        out.push(' ');
        out.push_str(&t.to_binary(bits));
    }
    out.push('\n');
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for p in paths {
        out.push('P');
        for v in p {
            out.push(' ');
            out.push_str(&v.to_binary(bits));
        }
        out.push('\n');
    }
    out
}

fn parse_vertex(tok: &str, bits: u32, line: usize) -> Result<Vertex> {
    Vertex::parse_binary(tok, bits).map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })
}

/// Parses a family whose vertices are `bits`-character binary strings.
/// Blank lines, `#` comments and `OK` status lines may appear anywhere;
/// exactly one `D` line is required and it must precede every `P` line.
pub fn parse_family(text: &str, bits: u32) -> Result<FamilyText> {
    let mut terminals = None;
    let mut paths = Vec::new();
    let mut comments = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            comments.push(rest.trim_start().to_string());
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            Some("D") => {
                if terminals.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "second D line".into(),
                    });
                }
                let vs = toks
                    .map(|t| parse_vertex(t, bits, line))
                    .collect::<Result<Vec<_>>>()?;
                let d: [Vertex; 3] = vs.try_into().map_err(|_| Error::Parse {
                    line,
                    message: "D line needs exactly three vertices".into(),
                })?;
                terminals = Some(d);
            }
            Some("P") => {
                if terminals.is_none() {
                    return Err(Error::Parse {
                        line,
                        message: "P line before D line".into(),
                    });
                }
                let p = toks
                    .map(|t| parse_vertex(t, bits, line))
                    .collect::<Result<Vec<_>>>()?;
                paths.push(p);
            }
            // status line printed after a family by the command-line tool
            Some("OK") => {}
            Some(other) => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown record {other:?}"),
                })
            }
            None => unreachable!(),
        }
    }
    let terminals = terminals.ok_or(Error::Parse {
        line: 0,
        message: "missing D line".into(),
    })?;
    Ok(FamilyText {
        terminals,
        paths,
        comments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let d = [Vertex(0), Vertex(2), Vertex(1)];
        let paths = vec![
            vec![Vertex(2), Vertex(0), Vertex(1)],
            vec![Vertex(0), Vertex(3), Vertex(2), Vertex(1)],
        ];
        let comments = vec!["trace: n=4 case=L8.1".to_string()];
        let text = write_family(4, d, &paths, &comments);
        assert!(text.starts_with("D 0000 0010 0001\n# trace: n=4 case=L8.1\nP 0010 0000 0001\n"));
        let parsed = parse_family(&text, 4).unwrap();
        assert_eq!(parsed.terminals, d);
        assert_eq!(parsed.paths, paths);
        assert_eq!(parsed.comments, comments);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_family("P 0000 0001\n", 4).is_err());
        assert!(parse_family("D 0000 0001\n", 4).is_err());
        assert!(parse_family("D 0000 0001 0010\nQ 0000\n", 4).is_err());
        assert!(parse_family("D 0000 0001 2\n", 4).is_err());
        assert!(parse_family("D 0000 0001 0010\nP 000\n", 4).is_err());
        assert!(parse_family("", 4).is_err());
    }
}
