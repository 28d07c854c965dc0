//! Human and JSON renderings of computation results.
//!
//! The JSON documents are schema-stable: field names are fixed
//! (`conclusion`, `cup_ok`, `max_level`, `witness`, `directions`, …),
//! serialization order is struct declaration order, and every number is
//! an exact rational rendered `p/q` (the `/q` omitted when `q = 1`), so
//! identical invocations produce byte-identical output.

use serde::Serialize;

use crate::cohomology::{betti_numbers, cohomology_basis, CohomologySubspace};
use crate::deformability::{DeformabilityVerdict, Level, MaxLevel};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::model::DgaModel;
use crate::obstruction::{
    BulletOutcome, ChecklistConclusion, DirectionResult, ObstructionChecklist, ScanReport,
};
use crate::scalar::format_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            other => Err(Error::Expr { msg: format!("unknown format `{other}`") }),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn span(model: &DgaModel, elements: &[Element]) -> String {
    if elements.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = elements.iter().map(|e| model.format_element(e)).collect();
    format!("span({})", parts.join(", "))
}

// ---------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct DegreeJson {
    degree: usize,
    dimension: usize,
    representatives: Vec<String>,
    coboundaries: Vec<String>,
}

#[derive(Serialize)]
struct CohomologyJson {
    model: String,
    top_degree: usize,
    betti: Vec<usize>,
    degrees: Vec<DegreeJson>,
}

pub fn render_cohomology(model: &DgaModel, only_degree: Option<usize>, format: Format) -> String {
    let top = model.top_degree();
    let degrees: Vec<usize> = match only_degree {
        Some(r) => vec![r],
        None => (0..=top).collect(),
    };
    let tables: Vec<(usize, CohomologySubspace)> = degrees
        .iter()
        .map(|&r| (r, cohomology_basis(model, r)))
        .collect();
    match format {
        Format::Json => {
            let doc = CohomologyJson {
                model: model.label().to_string(),
                top_degree: top,
                betti: betti_numbers(model),
                degrees: tables
                    .iter()
                    .map(|(r, h)| DegreeJson {
                        degree: *r,
                        dimension: h.dimension(),
                        representatives: h
                            .representatives()
                            .iter()
                            .map(|e| model.format_element(e))
                            .collect(),
                        coboundaries: h
                            .relations()
                            .iter()
                            .map(|e| model.format_element(e))
                            .collect(),
                    })
                    .collect(),
            };
            to_json(&doc)
        }
        Format::Human => {
            let betti: Vec<String> =
                betti_numbers(model).iter().map(|b| b.to_string()).collect();
            let mut out = format!(
                "model: {}   top degree {}   betti ({})\n",
                model.label(),
                top,
                betti.join(", ")
            );
            for (r, h) in &tables {
                let mut line =
                    format!("H^{r}  dim {}  {}", h.dimension(), span(model, h.representatives()));
                if !h.relations().is_empty() {
                    line.push_str(&format!(
                        "   modulo coboundaries {}",
                        span(model, h.relations())
                    ));
                }
                out.push_str(&line);
                out.push('\n');
            }
            out
        }
    }
}

// ---------------------------------------------------------------------
// vspace
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct VSpaceJson {
    model: String,
    eta: String,
    degree: usize,
    level: String,
    /// The level actually computed (`INFINITY` reduces to a bound).
    effective_level: usize,
    dimension: usize,
    h_dimension: usize,
    representatives: Vec<String>,
}

pub fn render_vspace(
    model: &DgaModel,
    eta: &Element,
    degree: usize,
    requested: Level,
    effective: usize,
    v: &CohomologySubspace,
    format: Format,
) -> String {
    let h_dim = cohomology_basis(model, degree).dimension();
    match format {
        Format::Json => to_json(&VSpaceJson {
            model: model.label().to_string(),
            eta: model.format_element(eta),
            degree,
            level: requested.to_string(),
            effective_level: effective,
            dimension: v.dimension(),
            h_dimension: h_dim,
            representatives: v
                .representatives()
                .iter()
                .map(|e| model.format_element(e))
                .collect(),
        }),
        Format::Human => {
            let level_note = match requested {
                Level::Infinity => format!("INFINITY (reduced to level {effective})"),
                Level::Finite(_) => effective.to_string(),
            };
            format!(
                "V^{{{level_note},{degree}}} along [{}]: dimension {} (H^{degree} has dimension {h_dim})\n  {}\n",
                model.format_element(eta),
                v.dimension(),
                span(model, v.representatives())
            )
        }
    }
}

// ---------------------------------------------------------------------
// deformability verdicts
// ---------------------------------------------------------------------

#[derive(Serialize)]
#[serde(untagged)]
enum MaxLevelJson {
    Finite(usize),
    Tag(&'static str),
}

#[derive(Serialize)]
struct VerdictJson {
    alpha: String,
    mu: String,
    requested_cutoff: String,
    cutoff: usize,
    max_level: MaxLevelJson,
    stabilized: bool,
    refuted_at: Option<usize>,
    witness: String,
    v_dimensions: Vec<usize>,
}

fn verdict_json(model: &DgaModel, v: &DeformabilityVerdict) -> VerdictJson {
    VerdictJson {
        alpha: model.format_element(&v.alpha),
        mu: model.format_element(&v.mu),
        requested_cutoff: v.requested.to_string(),
        cutoff: v.cutoff,
        max_level: match v.max_level {
            MaxLevel::Finite(l) => MaxLevelJson::Finite(l),
            MaxLevel::AtLeastCutoff => MaxLevelJson::Tag("at-least-cutoff"),
        },
        stabilized: v.stabilized,
        refuted_at: v.refuted_at,
        witness: v.witness.format(model),
        v_dimensions: v.v_dimensions.clone(),
    }
}

/// Trailing run of equal `dim V^L` values, when it is merely suggestive.
fn streak_note(v: &DeformabilityVerdict) -> Option<String> {
    if v.stabilized || v.v_dimensions.len() < 2 {
        return None;
    }
    let last = *v.v_dimensions.last().unwrap();
    let streak = v.v_dimensions.iter().rev().take_while(|&&d| d == last).count();
    (streak >= 2).then(|| {
        format!(
            "dim V^L constant over the last {streak} levels — a heuristic signal only, \
             not a proof of stabilization"
        )
    })
}

pub fn render_verdict(
    model: &DgaModel,
    v: &DeformabilityVerdict,
    show_witness: bool,
    format: Format,
) -> String {
    match format {
        Format::Json => to_json(&verdict_json(model, v)),
        Format::Human => {
            let mut out = format!(
                "deformability of [{}] along [{}]\n",
                model.format_element(&v.alpha),
                model.format_element(&v.mu)
            );
            out.push_str(&format!(
                "  cutoff: requested {}, examined {}\n",
                v.requested, v.cutoff
            ));
            match v.max_level {
                MaxLevel::Finite(l) => {
                    let at = v.refuted_at.expect("finite verdicts carry a refutation level");
                    out.push_str(&format!(
                        "  max jet level: {l} (absolute; non-membership in V^{at} certified)\n"
                    ));
                }
                MaxLevel::AtLeastCutoff if v.stabilized => {
                    out.push_str(&format!(
                        "  max jet level: unbounded (deformable at every level; \
                         stabilization reached at level {})\n",
                        v.cutoff
                    ));
                }
                MaxLevel::AtLeastCutoff => {
                    out.push_str(&format!(
                        "  max jet level: at least {} (cutoff reached without refutation)\n",
                        v.cutoff
                    ));
                }
            }
            if !v.v_dimensions.is_empty() {
                let dims: Vec<String> =
                    v.v_dimensions.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!("  dim V^L by level: {}\n", dims.join(", ")));
            }
            if let Some(note) = streak_note(v) {
                out.push_str(&format!("  note: {note}\n"));
            }
            if show_witness {
                out.push_str(&format!(
                    "  witness (level {}): {}\n",
                    v.achieved_level(),
                    v.witness.format(model)
                ));
            }
            out
        }
    }
}

// ---------------------------------------------------------------------
// obstruction checklist
// ---------------------------------------------------------------------

#[derive(Serialize)]
#[serde(untagged)]
enum BulletJson {
    NotApplicable { not_applicable: String },
    Verdict(VerdictJson),
}

#[derive(Serialize)]
struct ObstructionJson {
    level: usize,
    bullet: u8,
}

#[derive(Serialize)]
struct ChecklistJson {
    alpha: String,
    pd: String,
    conclusion: &'static str,
    obstruction: Option<ObstructionJson>,
    cup_ok: bool,
    cup_class: String,
    alpha_along_pd: BulletJson,
    pd_along_alpha: BulletJson,
}

fn conclusion_name(c: &ChecklistConclusion) -> &'static str {
    match c {
        ChecklistConclusion::Obstructed { .. } => "OBSTRUCTED",
        ChecklistConclusion::PassesUpToCutoff => "PASSES_UP_TO_CUTOFF",
        ChecklistConclusion::PassesDefinitively => "PASSES_DEFINITIVELY",
    }
}

fn bullet_json(model: &DgaModel, b: &BulletOutcome) -> BulletJson {
    match b {
        BulletOutcome::NotApplicable { reason } => {
            BulletJson::NotApplicable { not_applicable: reason.clone() }
        }
        BulletOutcome::Verdict(v) => BulletJson::Verdict(verdict_json(model, v)),
    }
}

fn checklist_json(model: &DgaModel, c: &ObstructionChecklist) -> ChecklistJson {
    ChecklistJson {
        alpha: model.format_element(&c.alpha),
        pd: model.format_element(&c.pd),
        conclusion: conclusion_name(&c.conclusion),
        obstruction: match c.conclusion {
            ChecklistConclusion::Obstructed { level, bullet } => {
                Some(ObstructionJson { level, bullet })
            }
            _ => None,
        },
        cup_ok: c.cup_ok,
        cup_class: model.format_element(&c.cup_class),
        alpha_along_pd: bullet_json(model, &c.alpha_along_pd),
        pd_along_alpha: bullet_json(model, &c.pd_along_alpha),
    }
}

fn bullet_line(model: &DgaModel, b: &BulletOutcome) -> String {
    match b {
        BulletOutcome::NotApplicable { reason } => format!("not applicable ({reason})"),
        BulletOutcome::Verdict(v) => match v.max_level {
            MaxLevel::Finite(l) => format!(
                "max level {l}, refuted at level {}",
                v.refuted_at.expect("finite verdicts carry a refutation level")
            ),
            MaxLevel::AtLeastCutoff if v.stabilized => {
                format!("deformable at every level (stabilized at {})", v.cutoff)
            }
            MaxLevel::AtLeastCutoff => format!("passes up to cutoff {}", v.cutoff),
        },
    }
}

pub fn render_checklist(model: &DgaModel, c: &ObstructionChecklist, format: Format) -> String {
    match format {
        Format::Json => to_json(&checklist_json(model, c)),
        Format::Human => {
            let mut out = format!(
                "obstruction checklist: alpha = [{}], pd = [{}]\n",
                model.format_element(&c.alpha),
                model.format_element(&c.pd)
            );
            out.push_str(&format!(
                "  [3] cup product [pd ∧ alpha] = {} — {}\n",
                model.format_element(&c.cup_class),
                if c.cup_ok { "passes" } else { "OBSTRUCTED" }
            ));
            out.push_str(&format!(
                "  [1] alpha along pd: {}\n",
                bullet_line(model, &c.alpha_along_pd)
            ));
            out.push_str(&format!(
                "  [2] pd along alpha: {}\n",
                bullet_line(model, &c.pd_along_alpha)
            ));
            let conclusion = match c.conclusion {
                ChecklistConclusion::Obstructed { level, bullet } => {
                    format!("OBSTRUCTED at level {level} (bullet {bullet})")
                }
                ChecklistConclusion::PassesUpToCutoff => "PASSES_UP_TO_CUTOFF".into(),
                ChecklistConclusion::PassesDefinitively => "PASSES_DEFINITIVELY".into(),
            };
            out.push_str(&format!("  conclusion: {conclusion}\n"));
            out
        }
    }
}

// ---------------------------------------------------------------------
// scans
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct DirectionJson {
    coordinates: Vec<String>,
    direction: String,
    conclusion: &'static str,
    obstruction: Option<ObstructionJson>,
    shortcut: Option<String>,
    checklist: ChecklistJson,
}

#[derive(Serialize)]
struct TruncationJson {
    shown: usize,
    total: usize,
}

#[derive(Serialize)]
struct ScanJson {
    alpha: String,
    codim: usize,
    cutoff: String,
    ambient_dimension: usize,
    kernel_dimension: usize,
    cup_kernel: Vec<String>,
    exhaustive: bool,
    truncated: Option<TruncationJson>,
    directions: Vec<DirectionJson>,
    obstructed: usize,
    passed: usize,
    passed_definitively: usize,
    outside_note: Option<String>,
    summary: String,
}

fn direction_json(model: &DgaModel, d: &DirectionResult) -> DirectionJson {
    DirectionJson {
        coordinates: d.coordinates.iter().map(format_rational).collect(),
        direction: model.format_element(&d.direction),
        conclusion: conclusion_name(&d.checklist.conclusion),
        obstruction: match d.checklist.conclusion {
            ChecklistConclusion::Obstructed { level, bullet } => {
                Some(ObstructionJson { level, bullet })
            }
            _ => None,
        },
        shortcut: d.shortcut.clone(),
        checklist: checklist_json(model, &d.checklist),
    }
}

pub fn render_scan(model: &DgaModel, s: &ScanReport, format: Format) -> String {
    match format {
        Format::Json => to_json(&ScanJson {
            alpha: model.format_element(&s.alpha),
            codim: s.codim,
            cutoff: s.cutoff.to_string(),
            ambient_dimension: s.ambient_dimension,
            kernel_dimension: s.cup_kernel.dimension(),
            cup_kernel: s
                .cup_kernel
                .representatives()
                .iter()
                .map(|e| model.format_element(e))
                .collect(),
            exhaustive: s.exhaustive,
            truncated: s.truncated.map(|(shown, total)| TruncationJson { shown, total }),
            directions: s.directions.iter().map(|d| direction_json(model, d)).collect(),
            obstructed: s.obstructed,
            passed: s.passed,
            passed_definitively: s.passed_definitively,
            outside_note: s.outside_note.clone(),
            summary: s.summary.clone(),
        }),
        Format::Human => {
            let mut out = format!(
                "scan: alpha = [{}], codimension {}, cutoff {}\n",
                model.format_element(&s.alpha),
                s.codim,
                s.cutoff
            );
            out.push_str(&format!(
                "  H^{} dimension {}; cup kernel dimension {}: {}\n",
                s.codim,
                s.ambient_dimension,
                s.cup_kernel.dimension(),
                span(model, s.cup_kernel.representatives())
            ));
            if let Some(note) = &s.outside_note {
                out.push_str(&format!("  {note}\n"));
            }
            if s.exhaustive {
                out.push_str("  enumeration: exhaustive over projective directions\n");
            } else {
                out.push_str(
                    "  enumeration: bounded-height sample of projective directions \
                     (a sample, not a proof)\n",
                );
            }
            if let Some((shown, total)) = s.truncated {
                out.push_str(&format!("  grid truncated to {shown} of {total} directions\n"));
            }
            for (i, d) in s.directions.iter().enumerate() {
                let verdict = match d.checklist.conclusion {
                    ChecklistConclusion::Obstructed { level, bullet } => {
                        format!("OBSTRUCTED at level {level} (bullet {bullet})")
                    }
                    ChecklistConclusion::PassesUpToCutoff => "passes up to cutoff".into(),
                    ChecklistConclusion::PassesDefinitively => "passes definitively".into(),
                };
                out.push_str(&format!(
                    "  [{}] direction {}: {verdict}\n",
                    i + 1,
                    model.format_element(&d.direction)
                ));
                if let Some(note) = &d.shortcut {
                    out.push_str(&format!("      {note}\n"));
                }
            }
            out.push_str(&format!("  summary: {}\n", s.summary));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformability::max_jet;
    use crate::expr::parse_element;
    use crate::model_io::builtin;
    use crate::obstruction::{scan, theorem_checklist, SampleSpec};

    fn kt() -> DgaModel {
        builtin("kodaira-thurston").unwrap()
    }

    #[test]
    fn cohomology_table_mentions_the_quotient() {
        let m = kt();
        let human = render_cohomology(&m, None, Format::Human);
        assert!(human.contains("betti (1, 3, 4, 3, 1)"));
        assert!(human.contains("H^2  dim 4  span(A*C, A*T, B*C, B*T)"));
        assert!(human.contains("modulo coboundaries span(A*B)"));
        let json = render_cohomology(&m, None, Format::Json);
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["betti"], serde_json::json!([1, 3, 4, 3, 1]));
        assert_eq!(doc["degrees"][2]["dimension"], 4);
    }

    #[test]
    fn verdict_rendering_is_stable() {
        let m = kt();
        let alpha = parse_element(m.generator_set(), "B*T").unwrap();
        let mu = parse_element(m.generator_set(), "A").unwrap();
        let v = max_jet(&m, &alpha, &mu, crate::deformability::Level::Finite(3)).unwrap();
        let a = render_verdict(&m, &v, true, Format::Json);
        let b = render_verdict(&m, &v, true, Format::Json);
        assert_eq!(a, b);
        let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(doc["max_level"], 1);
        assert_eq!(doc["witness"], "B*T + (C*T)*t");
        assert_eq!(doc["refuted_at"], 2);
        let human = render_verdict(&m, &v, true, Format::Human);
        assert!(human.contains("max jet level: 1 (absolute"));
        assert!(human.contains("witness (level 1): B*T + (C*T)*t"));
    }

    #[test]
    fn streak_note_only_when_suggestive() {
        let m = kt();
        let alpha = parse_element(m.generator_set(), "A*C").unwrap();
        let mu = parse_element(m.generator_set(), "A").unwrap();
        let v = max_jet(&m, &alpha, &mu, crate::deformability::Level::Finite(5)).unwrap();
        let human = render_verdict(&m, &v, false, Format::Human);
        assert!(human.contains("heuristic signal only"));
    }

    #[test]
    fn checklist_json_has_the_stable_fields() {
        let m = kt();
        let alpha = parse_element(m.generator_set(), "A*C + B*T").unwrap();
        let pd = parse_element(m.generator_set(), "A").unwrap();
        let c =
            theorem_checklist(&m, &alpha, &pd, crate::deformability::Level::Finite(3)).unwrap();
        let json = render_checklist(&m, &c, Format::Json);
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["conclusion"], "OBSTRUCTED");
        assert_eq!(doc["cup_ok"], true);
        assert_eq!(doc["obstruction"]["level"], 2);
        assert_eq!(doc["obstruction"]["bullet"], 1);
        assert_eq!(doc["alpha_along_pd"]["max_level"], 1);
        assert!(doc["pd_along_alpha"]["not_applicable"].is_string());
    }

    #[test]
    fn scan_json_lists_directions() {
        let m = kt();
        let alpha = parse_element(m.generator_set(), "A*C + B*T").unwrap();
        let report = scan(
            &m,
            &alpha,
            1,
            crate::deformability::Level::Finite(3),
            SampleSpec::default(),
            true,
        )
        .unwrap();
        let json = render_scan(&m, &report, Format::Json);
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["directions"].as_array().unwrap().len(), 1);
        assert_eq!(doc["directions"][0]["direction"], "A");
        assert_eq!(doc["directions"][0]["conclusion"], "OBSTRUCTED");
        assert!(doc["summary"]
            .as_str()
            .unwrap()
            .contains("admits no non-separating exact hypersurface"));
        let human = render_scan(&m, &report, Format::Human);
        assert!(human.contains("exhaustive over projective directions"));
    }
}
