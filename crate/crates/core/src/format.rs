//! Line-oriented text formats for labeled braids and surgery diagrams.
//!
//! Labeled braid:
//!
//! ```text
//! strands 4
//! fold 3
//! word 1 2 3 1 2 3 1 2 3 1 2 3
//! labels (1 2) (1 2) (2 3) (2 3)
//! ```
//!
//! `braid B4: 1 2 3` may replace the `strands` and `word` lines. Surgery
//! diagram:
//!
//! ```text
//! components 2
//! tb -1 -1
//! rot 0 0
//! lk 1 2 1
//! ```
//!
//! with one `lk i j value` line per linked pair and an optional
//! `contact c_1 … c_n` line of `±1` coefficients. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{PermError, Permutation};
use crate::braid::{BraidError, BraidWord};
use crate::cover::{CoverError, LabeledBraid};
use crate::surgery::{SurgeryDiagram, SurgeryError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("line {line}: {source}")]
    Braid { line: usize, source: BraidError },
    #[error("line {line}: {source}")]
    Label { line: usize, source: PermError },
    #[error("line {line}: {source}")]
    Cover { line: usize, source: CoverError },
    #[error("line {line}: {source}")]
    Surgery { line: usize, source: SurgeryError },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, split into keyword and rest.
fn records(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            return None;
        }
        let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        Some((i + 1, key, rest.trim()))
    })
}

fn parse_ints<T: std::str::FromStr>(line: usize, rest: &str) -> Result<Vec<T>, FormatError> {
    rest.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| syntax(line, format!("not an integer: {t:?}")))
        })
        .collect()
}

fn parse_one<T: std::str::FromStr>(line: usize, key: &str, rest: &str) -> Result<T, FormatError> {
    let mut v = parse_ints::<T>(line, rest)?;
    if v.len() != 1 {
        return Err(syntax(line, format!("`{key}` takes exactly one integer")));
    }
    Ok(v.remove(0))
}

/// Parses `B3: 1 2 -1`.
pub fn parse_braid(text: &str) -> Result<BraidWord, FormatError> {
    parse_braid_at(1, text)
}

fn parse_braid_at(line: usize, text: &str) -> Result<BraidWord, FormatError> {
    let text = text.trim();
    let (head, tail) = text
        .split_once(':')
        .ok_or_else(|| syntax(line, "braid must look like `B3: 1 2 -1`"))?;
    let strands = head
        .trim()
        .strip_prefix('B')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| syntax(line, format!("bad strand count {head:?}")))?;
    let letters = parse_ints(line, tail)?;
    BraidWord::new(strands, letters).map_err(|source| FormatError::Braid { line, source })
}

/// Splits a label line into one token per permutation. Cycles written next
/// to each other, like `(1 2)(3 4)`, form a single label.
pub fn split_labels(line: usize, rest: &str) -> Result<Vec<String>, FormatError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in rest.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if !(0..=1).contains(&depth) {
            return Err(syntax(line, "unbalanced parentheses in labels"));
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(syntax(line, "unbalanced parentheses in labels"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

type Seen<'a> = HashMap<&'static str, (usize, &'a str)>;

fn braid_records(text: &str) -> Result<(Seen<'_>, BraidWord), FormatError> {
    let mut seen: Seen<'_> = HashMap::new();
    for (line, key, rest) in records(text) {
        let key = match key {
            "strands" => "strands",
            "fold" => "fold",
            "word" => "word",
            "labels" => "labels",
            "braid" => "braid",
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        };
        if let Some((first, _)) = seen.insert(key, (line, rest)) {
            return Err(syntax(
                line,
                format!("duplicate `{key}` (first on line {first})"),
            ));
        }
    }
    let braid = match seen.get("braid") {
        Some(&(line, rest)) => {
            if let Some(&(dup, _)) = seen.get("strands").or(seen.get("word")) {
                return Err(syntax(dup, "`braid` excludes `strands` and `word`"));
            }
            parse_braid_at(line, rest)?
        }
        None => {
            let &(sl, srest) = seen.get("strands").ok_or(FormatError::Missing("strands"))?;
            let strands: usize = parse_one(sl, "strands", srest)?;
            let &(wl, wrest) = seen.get("word").ok_or(FormatError::Missing("word"))?;
            BraidWord::new(strands, parse_ints(wl, wrest)?)
                .map_err(|source| FormatError::Braid { line: wl, source })?
        }
    };
    Ok((seen, braid))
}

/// The braid of a labeled-braid file; `fold` and `labels` may be absent.
pub fn parse_braid_file(text: &str) -> Result<BraidWord, FormatError> {
    braid_records(text).map(|(_, b)| b)
}

pub fn parse_labeled_braid(text: &str) -> Result<LabeledBraid, FormatError> {
    let (seen, braid) = braid_records(text)?;
    let &(fl, frest) = seen.get("fold").ok_or(FormatError::Missing("fold"))?;
    let fold: usize = parse_one(fl, "fold", frest)?;
    let &(ll, lrest) = seen.get("labels").ok_or(FormatError::Missing("labels"))?;
    let labels = split_labels(ll, lrest)?
        .iter()
        .map(|t| {
            Permutation::parse(t, fold).map_err(|source| FormatError::Label { line: ll, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let err_line = |e: &CoverError| match e {
        CoverError::BadFold(_) => fl,
        _ => ll,
    };
    LabeledBraid::new(braid, fold, labels).map_err(|source| FormatError::Cover {
        line: err_line(&source),
        source,
    })
}

pub fn write_labeled_braid(lb: &LabeledBraid) -> String {
    let line = |key: &str, items: Vec<String>| {
        if items.is_empty() {
            format!("{key}\n")
        } else {
            format!("{key} {}\n", items.join(" "))
        }
    };
    let mut s = format!("strands {}\nfold {}\n", lb.strands(), lb.fold());
    s += &line(
        "word",
        lb.braid().letters().iter().map(i32::to_string).collect(),
    );
    s += &line(
        "labels",
        lb.labels().iter().map(Permutation::to_string).collect(),
    );
    s
}

pub fn parse_surgery(text: &str) -> Result<SurgeryDiagram, FormatError> {
    let mut n: Option<(usize, usize)> = None;
    let mut tb: Option<(usize, Vec<i64>)> = None;
    let mut rot: Option<(usize, Vec<i64>)> = None;
    let mut contact: Option<(usize, Vec<i64>)> = None;
    let mut pairs: Vec<(usize, usize, usize, i64)> = Vec::new();
    for (line, key, rest) in records(text) {
        let slot = match key {
            "components" => {
                if n.is_some() {
                    return Err(syntax(line, "duplicate `components`"));
                }
                n = Some((line, parse_one(line, key, rest)?));
                continue;
            }
            "lk" => {
                let v: Vec<i64> = parse_ints(line, rest)?;
                let [i, j, value] = v[..] else {
                    return Err(syntax(line, "`lk` takes `i j value`"));
                };
                if i < 1 || j < 1 || i == j {
                    return Err(syntax(line, "`lk` needs two distinct 1-based components"));
                }
                pairs.push((line, i as usize - 1, j as usize - 1, value));
                continue;
            }
            "tb" => &mut tb,
            "rot" => &mut rot,
            "contact" => &mut contact,
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        };
        if slot.is_some() {
            return Err(syntax(line, format!("duplicate `{key}`")));
        }
        *slot = Some((line, parse_ints(line, rest)?));
    }
    let (nl, n) = n.ok_or(FormatError::Missing("components"))?;
    let (tl, tb) = tb.unwrap_or((nl, Vec::new()));
    let (rl, rot) = rot.unwrap_or((nl, Vec::new()));
    if tb.len() != n {
        return Err(syntax(
            tl,
            format!("expected {n} tb values, got {}", tb.len()),
        ));
    }
    if rot.len() != n {
        return Err(syntax(
            rl,
            format!("expected {n} rot values, got {}", rot.len()),
        ));
    }
    let mut seen = HashMap::new();
    for &(line, i, j, _) in &pairs {
        if i >= n || j >= n {
            return Err(syntax(line, format!("component out of range 1..={n}")));
        }
        if let Some(first) = seen.insert((i.min(j), i.max(j)), line) {
            return Err(syntax(
                line,
                format!("pair listed twice (first on line {first})"),
            ));
        }
    }
    let lk: Vec<_> = pairs.iter().map(|&(_, i, j, v)| (i, j, v)).collect();
    let d = SurgeryDiagram::from_pairs(tb, rot, &lk).map_err(|source| FormatError::Surgery {
        line: match source {
            SurgeryError::ParityViolation { .. } => rl,
            _ => nl,
        },
        source,
    })?;
    match contact {
        Some((cl, c)) => d
            .with_contact_coefficients(c)
            .map_err(|source| FormatError::Surgery { line: cl, source }),
        None => Ok(d),
    }
}

pub fn write_surgery(d: &SurgeryDiagram) -> String {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "components {}", d.len());
    if !d.is_empty() {
        let _ = writeln!(s, "tb {}", join(d.tb()));
        let _ = writeln!(s, "rot {}", join(d.rot()));
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let v = d.linking(i, j);
            if *v != 0.into() {
                let _ = writeln!(s, "lk {} {} {v}", i + 1, j + 1);
            }
        }
    }
    if !d.is_legendrian_surgery() {
        let _ = writeln!(s, "contact {}", join(d.contact_coefficients()));
    }
    s
}
