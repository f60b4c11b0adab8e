//! File emitters. The CSV layout is fixed so external plotting tools can
//! consume runs without code changes, and identical scenarios produce
//! byte-identical files.

use std::io::Write;

use crate::compare::ScenarioSeries;
use crate::error::Result;

/// Column order of every series CSV. Absent series leave their fields empty.
pub const CSV_HEADER: &str =
    "t,delta_exact,env_exact,delta_semianalytic,delta_closedform,env_closedform";

/// 17 significant digits: enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_field(row: &mut String, value: Option<f64>) {
    row.push(',');
    if let Some(v) = value {
        row.push_str(&fmt_f64(v));
    }
}

pub fn write_series_csv<W: Write>(mut w: W, series: &ScenarioSeries) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let env_of = |ts: &Option<crate::series::TimeSeries>, i: usize| {
        ts.as_ref().and_then(|s| s.envelope.as_ref()).map(|e| e[i])
    };
    let val_of =
        |ts: &Option<crate::series::TimeSeries>, i: usize| ts.as_ref().map(|s| s.values[i]);
    for i in 0..series.times.len() {
        let mut row = fmt_f64(series.times[i]);
        push_field(&mut row, val_of(&series.exact, i));
        push_field(&mut row, env_of(&series.exact, i));
        push_field(&mut row, val_of(&series.semianalytic, i));
        push_field(&mut row, val_of(&series.closedform, i));
        push_field(&mut row, env_of(&series.closedform, i));
        writeln!(w, "{row}")?;
    }
    Ok(())
}

/// Levels table for the `spectrum` command: quantum number, exact energy
/// (rank-mapped) and the two perturbative orders.
pub struct SpectrumTable {
    pub n_values: Vec<f64>,
    pub exact: Vec<f64>,
    pub first_order: Vec<f64>,
    pub second_order: Vec<f64>,
}

pub fn write_spectrum_csv<W: Write>(mut w: W, table: &SpectrumTable) -> Result<()> {
    writeln!(w, "n,e_exact,e_bh1,e_bh2")?;
    for i in 0..table.n_values.len() {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(table.n_values[i]),
            fmt_f64(table.exact[i]),
            fmt_f64(table.first_order[i]),
            fmt_f64(table.second_order[i]),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TimeSeries;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(628.3185307179587), "6.2831853071795865e2");
        // round-trips exactly
        let x = 1.0f64 / 3.0;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn absent_series_leave_empty_fields() {
        let times = vec![0.0, 1.0];
        let exact = TimeSeries::new(times.clone(), vec![0.5, -0.25], Some(vec![0.5, 0.3])).unwrap();
        let series = ScenarioSeries {
            times,
            exact: Some(exact),
            semianalytic: None,
            closedform: None,
        };
        let mut buf = Vec::new();
        write_series_csv(&mut buf, &series).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "0.0000000000000000e0,5.0000000000000000e-1,5.0000000000000000e-1,,,"
        );
        assert_eq!(
            lines.next().unwrap(),
            "1.0000000000000000e0,-2.5000000000000000e-1,2.9999999999999999e-1,,,"
        );
    }
}
