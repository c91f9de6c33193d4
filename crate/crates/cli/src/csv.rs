//! Sweep CSV: header `param,lhs,rhs,fulfilled,entangled,psd`, reals with 12
//! significant digits, flags as 0/1, LF line endings.
//!
//! With both functionals selected the columns become
//! `param,lhs_sum_squared,rhs_sum_squared,fulfilled_sum_squared,lhs_sum_literal,...,entangled,psd`.

use qudit_steering::{SteeringFunctional, SweepRecord};

pub const HEADER: &str = "param,lhs,rhs,fulfilled,entangled,psd";

const SIGNIFICANT: usize = 12;

/// `printf("%.12g")`: shortest of fixed or scientific notation with 12
/// significant digits and no trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// `runs[k]` holds the records for `functionals[k]`; all runs share the grid.
pub fn render(functionals: &[SteeringFunctional], runs: &[Vec<SweepRecord>]) -> String {
    assert_eq!(functionals.len(), runs.len());
    let mut text = String::new();
    if functionals.len() == 1 {
        text.push_str(HEADER);
        text.push('\n');
        for r in &runs[0] {
            text.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_sig(r.param),
                fmt_sig(r.lhs),
                fmt_sig(r.rhs),
                flag(r.fulfilled),
                flag(r.entangled),
                flag(r.psd)
            ));
        }
        return text;
    }

    let mut header = vec!["param".to_string()];
    for f in functionals {
        for col in ["lhs", "rhs", "fulfilled"] {
            header.push(format!("{col}_{}", f.name()));
        }
    }
    header.extend(["entangled".into(), "psd".into()]);
    text.push_str(&header.join(","));
    text.push('\n');
    for (k, first) in runs[0].iter().enumerate() {
        let mut row = vec![fmt_sig(first.param)];
        for run in runs {
            let r = &run[k];
            row.extend([fmt_sig(r.lhs), fmt_sig(r.rhs), flag(r.fulfilled).into()]);
        }
        row.extend([flag(first.entangled).into(), flag(first.psd).into()]);
        text.push_str(&row.join(","));
        text.push('\n');
    }
    text
}

/// Reads back a single-functional sweep CSV.
pub fn parse(text: &str) -> Result<Vec<SweepRecord>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(format!("expected header {HEADER:?}"));
    }
    lines
        .enumerate()
        .map(|(k, line)| {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != 6 {
                return Err(format!("row {}: expected 6 columns, found {}", k + 1, cells.len()));
            }
            let num = |i: usize| {
                cells[i]
                    .parse::<f64>()
                    .map_err(|e| format!("row {}, column {}: {e}", k + 1, i + 1))
            };
            let bit = |i: usize| match cells[i] {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(format!("row {}, column {}: expected 0 or 1, found {other:?}", k + 1, i + 1)),
            };
            Ok(SweepRecord {
                param: num(0)?,
                lhs: num(1)?,
                rhs: num(2)?,
                fulfilled: bit(3)?,
                entangled: bit(4)?,
                psd: bit(5)?,
            })
        })
        .collect()
}
