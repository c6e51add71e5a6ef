//! Tabular output: the fixed CSV schema and significant-digit rendering.
//!
//! Rows are RFC-4180 style with LF line endings, a fixed column order,
//! numbers at 12 significant digits, booleans as `true`/`false`, and absent
//! values as empty fields. Identical inputs produce byte-identical output.

use std::io::{self, Write};

use dmp_core::{EquilibriumReport, SimResult, SweepTable};

/// Column order for equilibrium rows, single reports and sweeps alike.
pub const REPORT_HEADER: &str = "eta,gamma,tau_f,tau_w,theta_star,p_star,q_star,u_star,v_star,\
                                 wage,wage_net,J_F,bellman_residual_F,free_entry_residual,rate_overflow";

/// Renders `x` with `sig` significant digits, in the style of C's `%g`:
/// positional when the decimal exponent lies in `[-4, sig)`, scientific
/// otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }

    // Round to `sig` digits via exponential formatting, then lay the digits
    // back out as text; no further float arithmetic, so no double rounding.
    let formatted = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = formatted.split_once('e').expect("exp format");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if exp >= -4 && (exp as i64) < sig as i64 {
        let point = exp + 1; // digits left of the decimal point
        let mut s = String::new();
        if point <= 0 {
            s.push_str("0.");
            for _ in 0..-point {
                s.push('0');
            }
            s.push_str(&digits);
        } else if point as usize >= digits.len() {
            s.push_str(&digits);
            for _ in 0..(point as usize - digits.len()) {
                s.push('0');
            }
        } else {
            s.push_str(&digits[..point as usize]);
            s.push('.');
            s.push_str(&digits[point as usize..]);
        }
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let mut m = String::new();
        m.push(digits.as_bytes()[0] as char);
        let rest = digits[1..].trim_end_matches('0');
        if !rest.is_empty() {
            m.push('.');
            m.push_str(rest);
        }
        format!("{m}e{exp}")
    };

    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn num(x: f64) -> String {
    fmt_sig(x, 12)
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn report_row(report: &EquilibriumReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        num(report.eta),
        num(report.gamma),
        num(report.tau_f),
        num(report.tau_w),
        num(report.theta_star),
        num(report.p_star),
        num(report.q_star),
        num(report.u_star),
        num(report.v_star),
        num(report.wage),
        num(report.wage_net),
        opt(report.j_f),
        opt(report.bellman_residual_f),
        opt(report.free_entry_residual),
        report.rate_overflow,
    )
}

/// A single report as a two-line CSV document.
pub fn write_report_csv<W: Write>(mut w: W, report: &EquilibriumReport) -> io::Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    writeln!(w, "{}", report_row(report))
}

/// A sweep table, one row per grid point. Rows whose solve failed keep
/// their parameter context and leave every computed column empty.
pub fn write_sweep_csv<W: Write>(mut w: W, table: &SweepTable) -> io::Result<()> {
    writeln!(w, "{REPORT_HEADER}")?;
    for row in &table.rows {
        match &row.outcome {
            Ok(report) => writeln!(w, "{}", report_row(report))?,
            Err(_) => {
                let point = table.point_at(row.value);
                writeln!(
                    w,
                    "{},{},{},{}{}",
                    num(point.eta),
                    num(point.policy.gamma),
                    num(point.policy.tau_f),
                    num(point.policy.tau_w),
                    ",".repeat(11)
                )?;
            }
        }
    }
    Ok(())
}

/// One-row summary of a simulation run.
pub fn write_sim_csv<W: Write>(mut w: W, result: &SimResult) -> io::Result<()> {
    writeln!(w, "u_mean,u_ci_halfwidth,clamped_rate_events")?;
    writeln!(
        w,
        "{},{},{}",
        num(result.u_mean),
        num(result.u_ci_halfwidth),
        result.clamped_rate_events
    )
}

/// Per-period pooled unemployment path.
pub fn write_path_csv<W: Write>(mut w: W, path: &[f64]) -> io::Result<()> {
    writeln!(w, "period,u_mean")?;
    for (t, u) in path.iter().enumerate() {
        writeln!(w, "{t},{}", num(*u))?;
    }
    Ok(())
}
