use rayon::prelude::*;
use serde::Serialize;
use subset_base::family::SCHEMA_VERSION;
use subset_base::{ActionSpec, Group};

use crate::cell::{evaluate, Cell};
use crate::exit::{Failure, Outcome};
use crate::{Format, TableArgs};

pub const CELL_LIMIT: u64 = 1_000_000;

pub const CSV_HEADER: &str = "group,n,r,base_size,witness_l,witness_k,lower_bound";

/// `a*r + b` written like `2r+3`, `r`, `3*r-1` or `40`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    coef: i64,
    constant: i64,
}

impl Affine {
    pub fn parse(text: &str) -> Option<Affine> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return None;
        }
        let mut out = Affine {
            coef: 0,
            constant: 0,
        };
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == text.len() => (1, rest),
                _ => return None,
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if let Some(c) = term.strip_suffix('r') {
                let c = c.strip_suffix('*').unwrap_or(c);
                let c: i64 = if c.is_empty() { 1 } else { c.parse().ok()? };
                out.coef = out.coef.checked_add(sign * c)?;
            } else {
                let c: i64 = term.parse().ok()?;
                out.constant = out.constant.checked_add(sign * c)?;
            }
        }
        Some(out)
    }

    pub fn at(self, r: u64) -> Option<u64> {
        let v = self
            .coef
            .checked_mul(i64::try_from(r).ok()?)?
            .checked_add(self.constant)?;
        u64::try_from(v).ok()
    }
}

fn parse_rel(text: &str) -> Outcome<(Affine, Affine)> {
    let bad = || {
        Failure::Input(format!(
            "cannot parse n range {text:?}; expected e.g. \"2r..2r+12\""
        ))
    };
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    Ok((
        Affine::parse(lo).ok_or_else(bad)?,
        Affine::parse(hi).ok_or_else(bad)?,
    ))
}

/// Every requested `(r, n)` pair, ordered by `r` then `n`.
fn cells(args: &TableArgs) -> Outcome<Vec<(u64, u64)>> {
    if args.r_min == 0 || args.r_min > args.r_max {
        return Err(Failure::Input(format!(
            "empty or invalid r range {}..{}",
            args.r_min, args.r_max
        )));
    }
    let rel = args.n_rel.as_deref().map(parse_rel).transpose()?;
    let mut out = Vec::new();
    for r in args.r_min..=args.r_max {
        let (lo, hi) = match (rel, args.n_min, args.n_max) {
            (Some((lo, hi)), _, _) => {
                let lo = lo
                    .at(r)
                    .ok_or_else(|| Failure::Input(format!("n range negative at r = {r}")))?;
                let hi = hi
                    .at(r)
                    .ok_or_else(|| Failure::Input(format!("n range negative at r = {r}")))?;
                (lo, hi)
            }
            (None, Some(lo), Some(hi)) => (lo, hi),
            _ => {
                return Err(Failure::Input(
                    "give --n-min and --n-max, or --n-rel".into(),
                ))
            }
        };
        if lo > hi {
            return Err(Failure::Input(format!(
                "empty n range {lo}..{hi} at r = {r}"
            )));
        }
        if (out.len() as u64).saturating_add(hi - lo + 1) > CELL_LIMIT {
            return Err(Failure::Input(format!("table exceeds {CELL_LIMIT} cells")));
        }
        out.extend((lo..=hi).map(|n| (r, n)));
    }
    Ok(out)
}

#[derive(Serialize)]
struct Row {
    group: Group,
    n: u64,
    r: u64,
    #[serde(flatten)]
    cell: Option<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn run(args: &TableArgs) -> Outcome {
    let group: Group = args.group.into();
    let pairs = cells(args)?;
    let rows: Vec<Row> = pairs
        .par_iter()
        .map(|&(r, n)| {
            let result = ActionSpec::new(group, n, r, true).and_then(|spec| evaluate(&spec));
            match result {
                Ok(cell) => Row {
                    group,
                    n,
                    r,
                    agrees: if args.check_closed_forms {
                        cell.closed_form_agrees()
                    } else {
                        None
                    },
                    cell: Some(cell),
                    error: None,
                },
                Err(e) => Row {
                    group,
                    n,
                    r,
                    cell: None,
                    agrees: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let text = match args.format {
        Format::Csv => csv(&rows, args.check_closed_forms),
        Format::Json => {
            let mut rows_json =
                serde_json::to_value(&rows).map_err(|e| Failure::Internal(e.to_string()))?;
            if !args.check_closed_forms {
                for row in rows_json.as_array_mut().into_iter().flatten() {
                    if let Some(obj) = row.as_object_mut() {
                        obj.remove("closed_form");
                    }
                }
            }
            let doc = serde_json::json!({"schema_version": SCHEMA_VERSION, "rows": rows_json});
            format!("{doc}\n")
        }
    };
    print!("{text}");
    Ok(())
}

fn csv(rows: &[Row], closed: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if closed {
        out.push_str(",closed_form,agrees");
    }
    out.push('\n');
    for row in rows {
        let prefix = format!("{},{},{}", row.group, row.n, row.r);
        match &row.cell {
            Some(c) => {
                out.push_str(&format!(
                    "{prefix},{},{},{},{}",
                    c.base_size, c.witness.l, c.witness.k, c.lower_bound
                ));
                if closed {
                    match &c.closed_form {
                        Some(f) => out.push_str(&format!(
                            ",{}:{},{}",
                            f.form,
                            f.value,
                            f.value == c.base_size
                        )),
                        None => out.push_str(",,"),
                    }
                }
            }
            None => {
                out.push_str(&format!("{prefix},domain-error,,,"));
                if closed {
                    out.push_str(",,");
                }
            }
        }
        out.push('\n');
    }
    out
}
