use std::collections::{BTreeMap, HashMap};

use crate::error::ParseError;
use crate::netmodel::{Complex, Reaction, ReactionNetwork};

type PResult<T> = std::result::Result<T, ParseError>;

struct Builder {
    species: Vec<String>,
    index: HashMap<String, usize>,
    reactions: Vec<Reaction>,
    /// Explicit labels and where they were written.
    labels: BTreeMap<String, (usize, usize)>,
    /// Reactions that still need an automatic label, with their line.
    unlabeled: Vec<(usize, usize)>,
}

impl Builder {
    fn species_index(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.species.len();
        self.species.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Offset of the first non-space character of `s` within the line, 1-based.
fn column_of(base: usize, raw: &str) -> usize {
    base + (raw.len() - raw.trim_start().len()) + 1
}

/// Parses one complex. `base` is the 0-based offset of `text` in the line.
fn parse_complex(
    b: &mut Builder,
    text: &str,
    line: usize,
    base: usize,
) -> PResult<Complex> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseError::new(line, column_of(base, text), "missing complex"));
    }
    if trimmed == "0" {
        return Ok(Complex::empty());
    }
    let mut terms = Vec::new();
    let mut offset = base;
    for raw in text.split('+') {
        let col = column_of(offset, raw);
        offset += raw.len() + 1;
        let term = raw.trim();
        if term.is_empty() {
            return Err(ParseError::new(line, col, "empty term in complex"));
        }
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (coef, name) = if digits == 0 {
            (1u64, term)
        } else {
            let coef: u64 = term[..digits]
                .parse()
                .map_err(|_| ParseError::new(line, col, "coefficient out of range"))?;
            let rest = term[digits..].trim_start();
            let rest = rest.strip_prefix('*').map(str::trim_start).unwrap_or(rest);
            if rest.is_empty() {
                let msg = if term == "0" {
                    "the empty complex 0 cannot be combined with other terms"
                } else {
                    "coefficient without a species"
                };
                return Err(ParseError::new(line, col, msg));
            }
            if coef == 0 {
                return Err(ParseError::new(line, col, "coefficient must be positive"));
            }
            (coef, rest)
        };
        if !is_identifier(name) {
            return Err(ParseError::new(
                line,
                col,
                format!("unexpected token {name:?}; expected a species name"),
            ));
        }
        let s = b.species_index(name);
        terms.push((s, coef));
    }
    Ok(Complex::from_terms(terms))
}

fn parse_labels(text: &str, line: usize, base: usize, expected: usize) -> PResult<Vec<(String, usize)>> {
    let mut labels = Vec::new();
    let mut offset = base;
    for raw in text.split(',') {
        let col = column_of(offset, raw);
        offset += raw.len() + 1;
        let label = raw.trim();
        if !is_identifier(label) {
            return Err(ParseError::new(
                line,
                col,
                format!("invalid rate label {label:?}"),
            ));
        }
        labels.push((label.to_string(), col));
    }
    if labels.len() != expected {
        return Err(ParseError::new(
            line,
            base + 1,
            format!("expected {expected} rate label(s), found {}", labels.len()),
        ));
    }
    Ok(labels)
}

fn push_reaction(
    b: &mut Builder,
    reactant: Complex,
    product: Complex,
    label: Option<(String, usize)>,
    line: usize,
    arrow_col: usize,
) -> PResult<()> {
    if reactant == product {
        return Err(ParseError::new(
            line,
            arrow_col,
            "self-loop: reactant and product complexes are identical",
        ));
    }
    let label = match label {
        Some((label, col)) => {
            if let Some((prev_line, _)) = b.labels.get(&label) {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("duplicate rate label {label} (first used on line {prev_line})"),
                ));
            }
            b.labels.insert(label.clone(), (line, col));
            label
        }
        None => {
            b.unlabeled.push((b.reactions.len(), line));
            String::new()
        }
    };
    b.reactions.push(Reaction {
        reactant,
        product,
        label,
    });
    Ok(())
}

/// Parses the reaction network text format.
///
/// Species are numbered by first appearance. A reversible `<->` line yields
/// the forward reaction followed immediately by the reverse one.
pub fn parse_network(text: &str) -> PResult<ReactionNetwork> {
    let mut b = Builder {
        species: Vec::new(),
        index: HashMap::new(),
        reactions: Vec::new(),
        labels: BTreeMap::new(),
        unlabeled: Vec::new(),
    };
    let mut last_line = 1;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let (body, labels_part) = match content.find(';') {
            Some(p) => (&content[..p], Some((&content[p + 1..], p + 1))),
            None => (content, None),
        };
        let (arrow_pos, arrow_len, reversible) = match (body.find("<->"), body.find("->")) {
            (Some(p), _) => (p, 3, true),
            (None, Some(p)) => (p, 2, false),
            (None, None) => {
                return Err(ParseError::new(line, column_of(0, body), "missing reaction arrow"));
            }
        };
        let rest = &body[arrow_pos + arrow_len..];
        if rest.contains("->") || rest.contains("<-") {
            let extra = arrow_pos + arrow_len + rest.find('-').or_else(|| rest.find('<')).unwrap_or(0);
            return Err(ParseError::new(line, extra + 1, "more than one arrow on a line"));
        }
        let left = &body[..arrow_pos];
        if left.contains('<') || left.contains('>') {
            return Err(ParseError::new(line, column_of(0, left), "malformed arrow"));
        }
        let reactant = parse_complex(&mut b, left, line, 0)?;
        let product = parse_complex(&mut b, rest, line, arrow_pos + arrow_len)?;

        let expected = if reversible { 2 } else { 1 };
        let mut labels = match labels_part {
            Some((t, base)) if !t.trim().is_empty() => parse_labels(t, line, base, expected)?
                .into_iter()
                .map(Some)
                .collect(),
            Some((_, base)) => {
                return Err(ParseError::new(line, base, "empty rate label list after ';'"));
            }
            None => vec![None; expected],
        };
        let arrow_col = arrow_pos + 1;
        let reverse_label = labels.pop().flatten();
        if reversible {
            let forward_label = labels.pop().flatten();
            push_reaction(&mut b, reactant.clone(), product.clone(), forward_label, line, arrow_col)?;
            push_reaction(&mut b, product, reactant, reverse_label, line, arrow_col)?;
        } else {
            push_reaction(&mut b, reactant, product, reverse_label, line, arrow_col)?;
        }
    }

    for &(idx, line) in &b.unlabeled {
        let label = format!("k{}", idx + 1);
        if let Some((prev_line, col)) = b.labels.get(&label) {
            return Err(ParseError::new(
                *prev_line,
                *col,
                format!("duplicate rate label {label}: also the automatic label of the reaction on line {line}"),
            ));
        }
        b.reactions[idx].label = label.clone();
        b.labels.insert(label, (line, 1));
    }

    if b.reactions.is_empty() {
        return Err(ParseError::new(last_line, 1, "network has no reactions"));
    }
    Ok(ReactionNetwork {
        species: b.species,
        reactions: b.reactions,
    })
}
