//! Plain-text instance format with exact round-trip.
//!
//! ```text
//! dmso-instance v1
//! decisions 2
//! rewards 0 1
//! observations 0
//! models 2
//! model M0
//! 0.3 0.7
//! 0.5 0.5
//! model M1
//! 0.5 0.5
//! 0.3 0.7
//! ```
//!
//! The header fixes the shared spaces; each model contributes one pmf row
//! per decision, flattened as `r_idx * obs_width + o_idx`. Floats are
//! written with Rust's shortest round-trip formatting and parsed exactly,
//! so `parse(serialize(x)) == x` bit-for-bit.

use crate::{FiniteModel, ModelClass, ModelError};

const MAGIC: &str = "dmso-instance v1";

/// Serializes a class to the text format.
pub fn serialize_class(class: &ModelClass) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("decisions {}\n", class.decision_count()));
    out.push_str("rewards");
    for r in class.reward_support() {
        out.push(' ');
        out.push_str(&format_f64(*r));
    }
    out.push('\n');
    out.push_str(&format!("observations {}\n", class.obs_count()));
    out.push_str(&format!("models {}\n", class.len()));
    for (model, label) in class.models().iter().zip(class.labels()) {
        out.push_str(&format!("model {label}\n"));
        for d in 0..model.decision_count() {
            let row = model.kernel_row(d);
            let mut line = String::new();
            for (i, p) in row.iter().enumerate() {
                if i > 0 {
                    line.push(' ');
                }
                line.push_str(&format_f64(*p));
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

/// Parses a class from the text format.
pub fn parse_class(text: &str) -> Result<ModelClass, ModelError> {
    let mut lines = text.lines().enumerate();
    let mut next_content = |expect: &str| -> Result<(usize, String), ModelError> {
        for (idx, raw) in lines.by_ref() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Ok((idx + 1, line.to_string()));
        }
        Err(ModelError::Parse {
            line: 0,
            reason: format!("unexpected end of input, expected {expect}"),
        })
    };

    let (ln, magic) = next_content("header")?;
    if magic != MAGIC {
        return Err(ModelError::Parse {
            line: ln,
            reason: format!("expected `{MAGIC}`, found `{magic}`"),
        });
    }
    let decisions: usize = parse_keyed(&mut next_content, "decisions")?;
    let (ln, rewards_line) = next_content("rewards")?;
    let mut parts = rewards_line.split_whitespace();
    if parts.next() != Some("rewards") {
        return Err(ModelError::Parse {
            line: ln,
            reason: "expected `rewards ...`".into(),
        });
    }
    let reward_support = parts
        .map(|tok| parse_f64(tok, ln))
        .collect::<Result<Vec<f64>, _>>()?;
    let observations: usize = parse_keyed(&mut next_content, "observations")?;
    let model_count: usize = parse_keyed(&mut next_content, "models")?;

    let width = reward_support.len() * observations.max(1);
    let mut models = Vec::with_capacity(model_count);
    let mut labels = Vec::with_capacity(model_count);
    for _ in 0..model_count {
        let (ln, header) = next_content("model header")?;
        let label = header
            .strip_prefix("model ")
            .or_else(|| (header == "model").then_some(""))
            .ok_or_else(|| ModelError::Parse {
                line: ln,
                reason: format!("expected `model <label>`, found `{header}`"),
            })?
            .trim()
            .to_string();
        let mut kernel = Vec::with_capacity(decisions);
        for _ in 0..decisions {
            let (ln, row_line) = next_content("kernel row")?;
            let row = row_line
                .split_whitespace()
                .map(|tok| parse_f64(tok, ln))
                .collect::<Result<Vec<f64>, _>>()?;
            if row.len() != width {
                return Err(ModelError::Parse {
                    line: ln,
                    reason: format!("row has {} entries, expected {width}", row.len()),
                });
            }
            kernel.push(row);
        }
        models.push(FiniteModel::new(
            reward_support.clone(),
            observations,
            kernel,
        )?);
        labels.push(label);
    }
    ModelClass::with_labels(models, labels)
}

fn parse_keyed(
    next_content: &mut impl FnMut(&str) -> Result<(usize, String), ModelError>,
    key: &str,
) -> Result<usize, ModelError> {
    let (ln, line) = next_content(key)?;
    let rest = line.strip_prefix(key).ok_or_else(|| ModelError::Parse {
        line: ln,
        reason: format!("expected `{key} <n>`, found `{line}`"),
    })?;
    rest.trim().parse().map_err(|e| ModelError::Parse {
        line: ln,
        reason: format!("bad {key} count: {e}"),
    })
}

fn parse_f64(token: &str, line: usize) -> Result<f64, ModelError> {
    let v: f64 = token.parse().map_err(|e| ModelError::Parse {
        line,
        reason: format!("bad number `{token}`: {e}"),
    })?;
    if !v.is_finite() {
        return Err(ModelError::Parse {
            line,
            reason: format!("non-finite number `{token}`"),
        });
    }
    Ok(v)
}

/// Shortest decimal string that parses back to exactly the same f64.
fn format_f64(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{make_mab_class, make_random_class, make_revealing_class};

    #[test]
    fn round_trip_is_exact() {
        for class in [
            make_mab_class(0.2, 3).unwrap(),
            make_revealing_class(0.25, 0.5, 3, true).unwrap(),
            make_random_class(7, 4, 3, 3, 2).unwrap(),
        ] {
            let text = serialize_class(&class);
            let back = parse_class(&text).unwrap();
            assert_eq!(class, back);
            // Serializing again yields the identical document.
            assert_eq!(text, serialize_class(&back));
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let class = make_mab_class(0.2, 2).unwrap();
        let text = serialize_class(&class);
        let noisy = text
            .lines()
            .map(|l| format!("{l}\n# comment\n\n"))
            .collect::<String>();
        assert_eq!(parse_class(&noisy).unwrap(), class);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(parse_class("not a header").is_err());
        let class = make_mab_class(0.2, 2).unwrap();
        let text = serialize_class(&class);
        let truncated: String = text.lines().take(6).collect::<Vec<_>>().join("\n");
        assert!(parse_class(&truncated).is_err());
        let corrupted = text.replace("0.7", "0.9");
        assert!(parse_class(&corrupted).is_err());
    }
}
