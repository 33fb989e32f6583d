//! The plain-text presentation format:
//!
//! ```text
//! # comment
//! [generators]
//! x 1        # name, degree, optional augmentation value 0 or 1
//! [relations]
//! x^2 + x*y
//! [options]
//! graded = true
//! name = example
//! ```

use crate::error::{Error, Result};
use crate::gralg::{parse_polynomial, Algebra, AlgebraPresentation, Generator, GradingMode};
use std::path::Path;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Generators,
    Relations,
    Options,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// 1-based column of the `k`-th whitespace-separated token of `line`.
fn token_column(line: &str, k: usize) -> usize {
    let mut seen = 0;
    let mut in_token = false;
    for (i, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            in_token = false;
        } else if !in_token {
            if seen == k {
                return i + 1;
            }
            seen += 1;
            in_token = true;
        }
    }
    line.chars().count() + 1
}

/// Parses a presentation; `default_name` is used unless `[options]` sets
/// `name`. Structural validation is left to [`Algebra::new`].
pub fn parse_presentation(text: &str, default_name: &str) -> Result<AlgebraPresentation> {
    let mut section = Section::None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut relation_lines: Vec<(usize, usize, String)> = Vec::new();
    let mut graded: Option<bool> = None;
    let mut name = default_name.to_string();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        if trimmed.starts_with('[') {
            section = match trimmed {
                "[generators]" => Section::Generators,
                "[relations]" => Section::Relations,
                "[options]" => Section::Options,
                _ => return Err(parse_err(lineno, indent + 1, format!("unknown section `{trimmed}`"))),
            };
            continue;
        }
        match section {
            Section::None => {
                return Err(parse_err(lineno, indent + 1, "content before the first section"));
            }
            Section::Generators => {
                let tokens: Vec<&str> = trimmed.split_whitespace().collect();
                if tokens.len() < 2 || tokens.len() > 3 {
                    return Err(parse_err(lineno, indent + 1, "expected `name degree [augmentation]`"));
                }
                let gname = tokens[0];
                if !gname.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                    || !gname.chars().all(|c| c.is_alphanumeric() || c == '_')
                {
                    return Err(parse_err(lineno, token_column(content, 0), format!("invalid generator name `{gname}`")));
                }
                let degree = tokens[1]
                    .parse::<u32>()
                    .map_err(|_| parse_err(lineno, token_column(content, 1), "degree must be a nonnegative integer"))?;
                let augmentation = match tokens.get(2) {
                    None => None,
                    Some(&"0") => Some(false),
                    Some(&"1") => Some(true),
                    Some(_) => return Err(parse_err(lineno, token_column(content, 2), "augmentation must be 0 or 1")),
                };
                generators.push(Generator {
                    name: gname.to_string(),
                    degree,
                    augmentation,
                });
            }
            Section::Relations => relation_lines.push((lineno, indent, trimmed.to_string())),
            Section::Options => {
                let (key, value) = trimmed
                    .split_once('=')
                    .ok_or_else(|| parse_err(lineno, indent + 1, "expected `key = value`"))?;
                let value_col = content.find('=').map_or(1, |p| content[..p].chars().count() + 2);
                match key.trim() {
                    "graded" => {
                        graded = Some(match value.trim() {
                            "true" => true,
                            "false" => false,
                            _ => return Err(parse_err(lineno, value_col, "expected `true` or `false`")),
                        })
                    }
                    "name" => name = value.trim().to_string(),
                    k => return Err(parse_err(lineno, indent + 1, format!("unknown option `{k}`"))),
                }
            }
        }
    }

    let mode = match graded {
        Some(true) => GradingMode::Graded,
        Some(false) => GradingMode::Ungraded,
        None if generators.iter().all(|g| g.degree == 0) => GradingMode::Ungraded,
        None => GradingMode::Graded,
    };
    let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
    let relations = relation_lines
        .into_iter()
        .map(|(lineno, indent, text)| {
            parse_polynomial(&text, &names).map_err(|e| parse_err(lineno, indent + e.column, e.message))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraPresentation {
        name,
        generators,
        relations,
        mode,
    })
}

/// Reads, parses and validates a presentation file.
pub fn load_presentation(path: &Path) -> Result<AlgebraPresentation> {
    let text = std::fs::read_to_string(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("algebra");
    let p = parse_presentation(&text, stem)?;
    Algebra::new(&p)?;
    Ok(p)
}

/// Reads a presentation file and builds the algebra.
pub fn load_algebra(path: &Path) -> Result<Algebra> {
    let text = std::fs::read_to_string(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("algebra");
    Algebra::new(&parse_presentation(&text, stem)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_options() {
        let p = parse_presentation(
            "# F4\n[generators]\nx 0\n[relations]\nx^2 + x + 1\n[options]\ngraded = false\nname = F4\n",
            "file",
        )
        .unwrap();
        assert_eq!(p.name, "F4");
        assert_eq!(p.mode, GradingMode::Ungraded);
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.relations.len(), 1);
        assert!(Algebra::new(&p).is_ok());
    }

    #[test]
    fn reports_line_and_column() {
        let e = parse_presentation("[generators]\nx 1\n[relations]\n  x^2 + w\n", "f").unwrap_err();
        match e {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (4, 9)),
            e => panic!("{e}"),
        }
        let e = parse_presentation("[generators]\nx one\n", "f").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 3, .. }));
        let e = parse_presentation("x 1\n", "f").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 1, .. }));
        let e = parse_presentation("[options]\ncolor = red\n", "f").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn inhomogeneous_graded_relation_is_rejected() {
        let p = parse_presentation("[generators]\nx 1\ny 2\n[relations]\nx^2 + y^1*x\n", "f").unwrap();
        assert!(matches!(Algebra::new(&p), Err(Error::Presentation(_))));
        let p = parse_presentation("[generators]\nx 2\ny 1\n[relations]\nx^2 + y\n", "f").unwrap();
        assert!(matches!(Algebra::new(&p), Err(Error::Presentation(_))));
    }

    #[test]
    fn augmentation_must_kill_relations() {
        let p = parse_presentation("[generators]\nx 0 1\n[relations]\nx^2\n", "f").unwrap();
        assert!(matches!(Algebra::new(&p), Err(Error::Presentation(_))));
    }
}
