//! Structured report documents.
//!
//! Every run renders to a single TOML document: inputs are echoed under
//! `[input.*]`, results live under `[report]` (or `[suite]`/`[[case]]`
//! for verification runs).  Floats print with 17 significant digits, so a
//! re-parsed document reproduces the exact `f64` values and re-running an
//! echoed input is byte-identical.

use crate::bounds::{BestBound, BoundReport};
use crate::geometry::GeometricData;
use crate::verify::SuiteReport;

/// Renders a float with enough digits to round-trip exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Incremental TOML writer; sections and keys are emitted in call order.
#[derive(Debug, Default)]
pub struct DocBuilder {
    buf: String,
}

impl DocBuilder {
    pub fn new() -> Self {
        DocBuilder { buf: String::new() }
    }

    fn blank_line(&mut self) {
        if !self.buf.is_empty() {
            self.buf.push('\n');
        }
    }

    /// Opens `[name]`.
    pub fn section(&mut self, name: &str) -> &mut Self {
        self.blank_line();
        self.buf.push_str(&format!("[{name}]\n"));
        self
    }

    /// Opens the next element of the array of tables `[[name]]`.
    pub fn array_section(&mut self, name: &str) -> &mut Self {
        self.blank_line();
        self.buf.push_str(&format!("[[{name}]]\n"));
        self
    }

    pub fn kv_str(&mut self, key: &str, value: &str) -> &mut Self {
        self.buf.push_str(&format!("{key} = \"{}\"\n", escape(value)));
        self
    }

    pub fn kv_float(&mut self, key: &str, value: f64) -> &mut Self {
        self.buf.push_str(&format!("{key} = {}\n", fmt_float(value)));
        self
    }

    pub fn kv_int(&mut self, key: &str, value: i64) -> &mut Self {
        self.buf.push_str(&format!("{key} = {value}\n"));
        self
    }

    pub fn kv_bool(&mut self, key: &str, value: bool) -> &mut Self {
        self.buf.push_str(&format!("{key} = {value}\n"));
        self
    }

    pub fn kv_float_opt(&mut self, key: &str, value: Option<f64>) -> &mut Self {
        if let Some(v) = value {
            self.kv_float(key, v);
        }
        self
    }

    pub fn kv_float_list(&mut self, key: &str, values: &[f64]) -> &mut Self {
        let items: Vec<String> = values.iter().map(|v| fmt_float(*v)).collect();
        self.buf.push_str(&format!("{key} = [{}]\n", items.join(", ")));
        self
    }

    pub fn kv_str_list(&mut self, key: &str, values: &[String]) -> &mut Self {
        let items: Vec<String> = values.iter().map(|v| format!("\"{}\"", escape(v))).collect();
        self.buf.push_str(&format!("{key} = [{}]\n", items.join(", ")));
        self
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Writes the twelve certified-data fields under `[{name}]`.
pub fn geometry_section(doc: &mut DocBuilder, name: &str, geom: &GeometricData) {
    doc.section(name);
    doc.kv_int("n", geom.n as i64);
    doc.kv_float("ric_lower_global", geom.ric_lower_global);
    doc.kv_float("ric_lower_collar", geom.ric_lower_collar);
    doc.kv_float("ric_upper_collar", geom.ric_upper_collar);
    doc.kv_float("sec_upper_collar", geom.sec_upper_collar);
    doc.kv_float("sec_lower_collar", geom.sec_lower_collar);
    doc.kv_float("kappa_lower", geom.kappa_lower);
    doc.kv_float("kappa_upper", geom.kappa_upper);
    doc.kv_float("mean_lower", geom.mean_lower);
    doc.kv_float("mean_upper", geom.mean_upper);
    doc.kv_float("rolling_radius", geom.rolling_radius);
    doc.kv_float("collar_radius", geom.collar_radius);
}

/// Writes one per-bound report as an element of `[[{name}]]`.
pub fn bound_report_section(doc: &mut DocBuilder, name: &str, rep: &BoundReport) {
    doc.array_section(name);
    doc.kv_str("theorem", rep.theorem.label());
    doc.kv_bool("applicable", rep.applicable);
    doc.kv_float_opt("window_sup", rep.window_sup);
    doc.kv_float_opt("delta_star", rep.delta_star);
    doc.kv_float_opt("kernel_E", rep.kernels.e);
    doc.kv_float_opt("kernel_F", rep.kernels.f);
    doc.kv_float_opt("kernel_P", rep.kernels.p);
    doc.kv_float_opt("kernel_Q", rep.kernels.q);
    doc.kv_float_opt("kernel_T", rep.kernels.t);
    doc.kv_int("iterations", rep.epsilon_trace.len() as i64);
    if let Some(last) = rep.epsilon_trace.last() {
        doc.kv_float("epsilon_final", *last);
    }
    doc.kv_float_opt("bound", rep.bound);
    doc.kv_bool("strict", rep.strict);
    if !rep.violations.is_empty() {
        doc.kv_str_list("violations", &rep.violations);
    }
    if !rep.notes.is_empty() {
        doc.kv_str_list("notes", &rep.notes);
    }
}

/// Renders the best-bound evaluation under `[report]` plus one
/// `[[report.theorems]]` element per attempted bound.
pub fn best_bound_report(doc: &mut DocBuilder, best: &BestBound) {
    doc.section("report");
    doc.kv_str("command", "bound");
    if let Some(theorem) = best.best {
        doc.kv_str("best_theorem", theorem.label());
    }
    doc.kv_float_opt("best_bound", best.bound);
    for rep in &best.reports {
        bound_report_section(doc, "report.theorems", rep);
    }
}

/// Renders one verification run: aggregate `[suite]` header followed by a
/// `[[case]]` element per check.
pub fn render_suite_report(report: &SuiteReport) -> String {
    let mut doc = DocBuilder::new();
    doc.section("suite");
    doc.kv_str("name", &report.suite);
    doc.kv_bool("pass", report.pass);
    doc.kv_int("cases", report.cases.len() as i64);
    doc.kv_int("failures", report.cases.iter().filter(|c| !c.pass).count() as i64);
    doc.kv_float("wall_time_s", report.wall_time_s);
    for case in &report.cases {
        doc.array_section("case");
        doc.kv_str("key", &case.key);
        doc.kv_bool("pass", case.pass);
        doc.kv_float_opt("oracle", case.oracle);
        doc.kv_float_opt("bound", case.bound);
        doc.kv_float_opt("margin", case.margin);
        if !case.notes.is_empty() {
            doc.kv_str_list("notes", &case.notes);
        }
        if !case.failures.is_empty() {
            doc.kv_str_list("failures", &case.failures);
        }
    }
    doc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        for x in [
            0.1,
            -1.0 / 3.0,
            0.5994561834,
            2.0f64.sqrt() - 1.0,
            1e-300,
            -4.9e300,
            std::f64::consts::PI,
        ] {
            let printed = fmt_float(x);
            let back: f64 = printed.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{printed}");
        }
    }

    #[test]
    fn builder_emits_valid_sections_and_escapes() {
        let mut doc = DocBuilder::new();
        doc.section("suite");
        doc.kv_str("name", "with \"quotes\" and \\slash");
        doc.kv_bool("pass", true);
        doc.array_section("case");
        doc.kv_int("k", -3);
        doc.kv_float_list("xs", &[1.0, 0.5]);
        let text = doc.finish();
        assert!(text.starts_with("[suite]\n"));
        assert!(text.contains("name = \"with \\\"quotes\\\" and \\\\slash\"\n"));
        assert!(text.contains("\n[[case]]\n"));
        assert!(text.contains("xs = [1.0000000000000000e0, 5.0000000000000000e-1]\n"));
    }
}
