use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::config::Format;
use crate::Failure;

pub const SCHEMA: &str = "circle-sqm/1";

/// A float in the fixed output format: 17 significant digits in scientific
/// notation; non-finite values become `null`.
pub type Num = Box<RawValue>;

pub fn num(x: f64) -> Num {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".to_owned() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub fn num_opt(x: Option<f64>) -> Option<Num> {
    x.map(num)
}

/// CSV cell for a float, matching the JSON text (empty for non-finite).
pub fn cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

pub fn cell_opt(x: Option<f64>) -> String {
    x.map(cell).unwrap_or_default()
}

/// One output document in both encodings.
pub trait Document {
    fn to_json(&self) -> Result<String, Failure>;
    fn csv_header(&self) -> &'static [&'static str];
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn pretty<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Config(format!("json encoding: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn render(doc: &dyn Document, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => Ok(doc.to_json()?.into_bytes()),
        Format::Csv => {
            let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
            let encode = |e: csv::Error| Failure::Config(format!("csv encoding: {e}"));
            writer.write_record(doc.csv_header()).map_err(encode)?;
            for row in doc.csv_rows() {
                writer.write_record(&row).map_err(encode)?;
            }
            writer
                .into_inner()
                .map_err(|e| Failure::Config(format!("csv encoding: {e}")))
        }
    }
}

/// Writes `bytes` to `path` via a temporary file in the same directory and a
/// rename, so readers never see a partial file; standard output if `None`.
pub fn write_atomic(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(bytes)?;
        stdout.flush()?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Failure::from(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_float_text() {
        assert_eq!(num(1.875).get(), "1.8750000000000000e0");
        assert_eq!(num(-0.1).get(), "-1.0000000000000001e-1");
        assert_eq!(num(f64::NAN).get(), "null");
        assert_eq!(cell(0.0), "0.0000000000000000e0");
        assert_eq!(cell(f64::INFINITY), "");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 4.0 - 1.0 / 18.0, 1e-300, 6.02214076e23] {
            let back: f64 = num(x).get().parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(Some(&path), b"first").unwrap();
        write_atomic(Some(&path), b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
