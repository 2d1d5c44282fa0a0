//! Deterministic serialization for reports.
//!
//! Every floating-point value is rendered with 17 significant digits
//! (`{:.16e}`), which round-trips any finite f64 exactly, so two runs with
//! identical inputs produce byte-identical output. JSON object keys go
//! through `serde_json`'s default `BTreeMap`, hence are sorted.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// Version stamp embedded in every report.
pub const SCHEMA_VERSION: u32 = 1;

/// A finite f64 with 17 significant digits; infinities and NaN get literal
/// names (only CSV uses those — JSON renders non-finite values as null).
pub fn fmt_f64(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else if value.is_nan() {
        "nan".to_string()
    } else if value > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Compact JSON formatter that pins f64 output to 17 significant digits.
#[derive(Default)]
pub struct FixedPrecision;

impl Formatter for FixedPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes a value to compact JSON with fixed-precision floats and a
/// trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedPrecision);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Minimal CSV assembly; fields are numbers, booleans, and short names, so
/// no quoting is ever needed.
#[derive(Debug, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new() -> Self {
        Csv::default()
    }

    pub fn header(&mut self, columns: &[&str]) -> &mut Self {
        self.row(columns.iter().map(|c| c.to_string()))
    }

    pub fn row(&mut self, fields: impl IntoIterator<Item = String>) -> &mut Self {
        let mut first = true;
        for field in fields {
            debug_assert!(!field.contains([',', '"', '\n']), "CSV fields stay plain");
            if !first {
                self.out.push(',');
            }
            self.out.push_str(&field);
            first = false;
        }
        self.out.push('\n');
        self
    }

    /// A `# key = value` trailer, conventionally skipped by CSV readers.
    pub fn comment(&mut self, text: &str) -> &mut Self {
        self.out.push_str("# ");
        self.out.push_str(text);
        self.out.push('\n');
        self
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_17_digits() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.powi(-40) * 1.3, -0.0, 123456.789, 1e-300] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "{s}");
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn json_uses_fixed_precision() {
        #[derive(Serialize)]
        struct Row {
            eps: f64,
        }
        let s = to_json_string(&Row { eps: 0.5 }).unwrap();
        assert_eq!(s, "{\"eps\":5.0000000000000000e-1}\n");
        // and the output is itself valid JSON
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["eps"].as_f64(), Some(0.5));
    }

    #[test]
    fn json_serialization_round_trips_values() {
        let value = serde_json::json!({
            "a": [0.1, 0.25],
            "b": {"nested": 1e-17},
            "c": 12,
        });
        let s = to_json_string(&value).unwrap();
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(value, back);
        // a second pass serializes to the same bytes
        assert_eq!(s, to_json_string(&back).unwrap());
    }

    #[test]
    fn csv_layout() {
        let mut csv = Csv::new();
        csv.header(&["eps", "gap"]);
        csv.row([fmt_f64(0.5), fmt_f64(0.25)]);
        csv.comment("slope = 1");
        let s = csv.finish();
        assert_eq!(
            s,
            "eps,gap\n5.0000000000000000e-1,2.5000000000000000e-1\n# slope = 1\n"
        );
    }
}
