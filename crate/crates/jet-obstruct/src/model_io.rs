//! Reading and writing `.dga` model files, plus the builtin models.
//!
//! The format is line-oriented:
//!
//! ```text
//! # Kodaira–Thurston manifold
//! dga kodaira-thurston
//! manifold-dim 4
//! oriented yes
//! generator A 1
//! generator B 1
//! generator C 1
//! generator T 1
//! d C = A*B
//! ```
//!
//! `#` starts a comment, blank lines are skipped, generator declaration
//! order fixes the basis order, and a generator without a `d` line is
//! closed.  Expressions use the grammar of [`crate::expr`].

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::model::{DgaModel, GeneratorSet, ModelMetadata};

/// A model together with where it came from.
#[derive(Clone, Debug)]
pub struct ModelFile {
    pub path: Option<PathBuf>,
    pub model: DgaModel,
}

pub fn load_model(path: &Path) -> Result<ModelFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let model = parse_model(&text)?;
    Ok(ModelFile { path: Some(path.to_path_buf()), model })
}

pub fn parse_model(text: &str) -> Result<DgaModel> {
    let mut label: Option<String> = None;
    let mut metadata = ModelMetadata::default();
    let mut generators: Vec<(String, usize)> = Vec::new();
    let mut diff_lines: Vec<(usize, String, String)> = Vec::new();

    for (ix, raw) in text.lines().enumerate() {
        let line_no = ix + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "dga" => {
                let name = words.next().ok_or_else(|| err("expected `dga <label>`".into()))?;
                if words.next().is_some() {
                    return Err(err("label must be a single word".into()));
                }
                if label.replace(name.to_string()).is_some() {
                    return Err(err("duplicate `dga` line".into()));
                }
            }
            "manifold-dim" => {
                let n = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| err("expected `manifold-dim <integer>`".into()))?;
                metadata.manifold_dim = Some(n);
            }
            "oriented" => match words.next() {
                Some("yes") => metadata.oriented = Some(true),
                Some("no") => metadata.oriented = Some(false),
                _ => return Err(err("expected `oriented yes` or `oriented no`".into())),
            },
            "provenance" => {
                let rest = line["provenance".len()..].trim();
                if rest.is_empty() {
                    return Err(err("expected `provenance <text>`".into()));
                }
                metadata.provenance = Some(rest.to_string());
            }
            "generator" => {
                let name =
                    words.next().ok_or_else(|| err("expected `generator <name> <degree>`".into()))?;
                let degree = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| err("expected a degree after the generator name".into()))?;
                if words.next().is_some() {
                    return Err(err("trailing input after generator declaration".into()));
                }
                generators.push((name.to_string(), degree));
            }
            "d" => {
                let rest = line[1..].trim();
                let (name, expr) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `d <name> = <expression>`".into()))?;
                diff_lines.push((line_no, name.trim().to_string(), expr.trim().to_string()));
            }
            other => {
                return Err(err(format!("unknown directive `{other}`")));
            }
        }
    }

    let label = label.ok_or(Error::Parse { line: 1, msg: "missing `dga <label>` line".into() })?;
    let gen_refs: Vec<(&str, usize)> =
        generators.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let gens = GeneratorSet::new(&label, &gen_refs)?;

    let mut diff: Vec<(usize, Element)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line_no, name, expr) in diff_lines {
        let ix = gens.index_of(&name).ok_or(Error::Parse {
            line: line_no,
            msg: format!("`d {name}` refers to an undeclared generator"),
        })?;
        if !seen.insert(ix) {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("duplicate differential for `{name}`"),
            });
        }
        let e = parse_element(&gens, &expr)
            .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
        diff.push((ix, e));
    }

    DgaModel::new(gens, diff, metadata)
}

/// Canonical `.dga` text for a model; `parse_model` inverts it.
pub fn format_model(model: &DgaModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dga {}", model.label());
    let meta = model.metadata();
    if let Some(n) = meta.manifold_dim {
        let _ = writeln!(out, "manifold-dim {n}");
    }
    if let Some(o) = meta.oriented {
        let _ = writeln!(out, "oriented {}", if o { "yes" } else { "no" });
    }
    if let Some(p) = &meta.provenance {
        let _ = writeln!(out, "provenance {p}");
    }
    for g in model.generators() {
        let _ = writeln!(out, "generator {} {}", g.name, g.degree);
    }
    for (ix, g) in model.generators().iter().enumerate() {
        let d = model.differential_of(ix);
        if !d.is_zero() {
            let _ = writeln!(out, "d {} = {}", g.name, model.format_element(d));
        }
    }
    out
}

const KODAIRA_THURSTON: &str = "\
# Nilmanifold model of the Kodaira–Thurston 4-manifold:
# (Heisenberg manifold) x S^1, symplectic but not Kähler.
dga kodaira-thurston
manifold-dim 4
oriented yes
provenance Heisenberg nilmanifold times a circle
generator A 1
generator B 1
generator C 1
generator T 1
d C = A*B
";

fn torus_source(n: usize) -> String {
    let names = ["A", "B", "C", "D", "E", "F", "G", "H"];
    assert!(n <= names.len());
    let mut out = String::new();
    let _ = writeln!(out, "# Exterior algebra on {n} closed generators.");
    let _ = writeln!(out, "dga torus-{n}");
    let _ = writeln!(out, "manifold-dim {n}");
    let _ = writeln!(out, "oriented yes");
    let _ = writeln!(out, "provenance flat {n}-torus");
    for name in &names[..n] {
        let _ = writeln!(out, "generator {name} 1");
    }
    out
}

pub const BUILTIN_NAMES: &[&str] =
    &["kodaira-thurston", "torus-2", "torus-3", "torus-4", "torus-6"];

/// A builtin model by name.
pub fn builtin(name: &str) -> Result<DgaModel> {
    let text = match name {
        "kodaira-thurston" => KODAIRA_THURSTON.to_string(),
        "torus-2" => torus_source(2),
        "torus-3" => torus_source(3),
        "torus-4" => torus_source(4),
        "torus-6" => torus_source(6),
        _ => {
            return Err(Error::UnknownBuiltin {
                name: name.to_string(),
                available: BUILTIN_NAMES.join(", "),
            })
        }
    };
    parse_model(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_validate() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            assert!(m.validate().is_ok(), "{name}");
            assert_eq!(m.metadata().manifold_dim, Some(m.top_degree()), "{name}");
            assert_eq!(m.metadata().oriented, Some(true), "{name}");
        }
        let kt = builtin("kodaira-thurston").unwrap();
        assert_eq!(kt.generator_count(), 4);
        let c = kt.index_of("C").unwrap();
        assert_eq!(kt.format_element(kt.differential_of(c)), "A*B");
        assert!(matches!(builtin("klein-bottle"), Err(Error::UnknownBuiltin { .. })));
    }

    #[test]
    fn format_round_trips() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let printed = format_model(&m);
            let reparsed = parse_model(&printed).unwrap();
            assert_eq!(m, reparsed, "{name}");
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "dga x\ngenerator A 1\nd B = A";
        match parse_model(bad) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("undeclared"));
            }
            other => panic!("unexpected: {other:?}"),
        }
        let bad = "dga x\ngenerator A 1\ngenerator A 1";
        assert!(matches!(parse_model(bad), Err(Error::DuplicateGenerator { .. })));
        let bad = "generator A 1";
        assert!(matches!(parse_model(bad), Err(Error::Parse { line: 1, .. })));
        let bad = "dga x\nwidget A";
        assert!(matches!(parse_model(bad), Err(Error::Parse { line: 2, .. })));
        let bad = "dga x\ngenerator A 1\nd A = Q";
        assert!(matches!(parse_model(bad), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn even_degree_is_rejected_at_validation() {
        let bad = "dga x\ngenerator X 2";
        assert!(matches!(parse_model(bad), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn invalid_differentials_are_rejected() {
        // dD = A*B, dE = C*D has d²E = -A*B*C ≠ 0
        let bad = "\
dga broken
generator A 1
generator B 1
generator C 1
generator D 1
generator E 1
d D = A*B
d E = C*D
";
        match parse_model(bad) {
            Err(Error::InvalidModel { report }) => assert!(report.contains("E")),
            other => panic!("unexpected: {other:?}"),
        }
        // degree mismatch: d of a degree-1 generator must be degree 2
        let bad = "dga x\ngenerator A 1\ngenerator B 1\nd A = B";
        assert!(matches!(parse_model(bad), Err(Error::InvalidModel { .. })));
        // declared dimension must match the top degree
        let bad = "dga x\nmanifold-dim 3\ngenerator A 1\ngenerator B 1";
        assert!(matches!(parse_model(bad), Err(Error::InvalidModel { .. })));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "\n# heading\n\ndga c  # trailing comment\ngenerator A 1\n\n# done\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.label(), "c");
        assert_eq!(m.generator_count(), 1);
    }
}
