//! Loading observed series and model definitions from files.
//!
//! Two file formats are understood.
//!
//! **Series files** are UTF-8 CSV with a header row; the time and value
//! columns are addressed by name. Rows may arrive in any order; they are
//! sorted by time. Numbers use plain decimal or scientific notation
//! (thousands separators are rejected, not stripped).
//!
//! **Model files** are line-oriented `key = value` text. `#` starts a
//! comment, blank lines are skipped, and exactly one model variant must be
//! present:
//!
//! ```text
//! s0 = 7.5805          # single exponential: both keys required
//! lambda = 0.0555
//!
//! process = 0.1        # independent processes: one key per rate
//! process = 0.3
//!
//! component = 0.4,1.0  # multi-exponential: one "weight,rate" per channel
//! component = 0.3,0.1
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fitting::TimeSeries;
use crate::mono::MonoExpModel;
use crate::multiexp::{ExpComponent, MultiExpModel};
use crate::processes::ProcessSet;

/// How raw file times map to the series' internal time offsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OriginPolicy {
    /// The earliest time in the file becomes `t = 0`.
    FirstRowAsZero,
    /// The given raw time becomes `t = 0`; earlier rows get negative offsets.
    Explicit(f64),
}

/// Where and how to read a series file.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFileSpec {
    pub path: PathBuf,
    pub time_column: String,
    pub value_column: String,
    pub origin_policy: OriginPolicy,
}

impl SeriesFileSpec {
    /// Column names must be nonempty and distinct.
    pub fn new(
        path: impl Into<PathBuf>,
        time_column: impl Into<String>,
        value_column: impl Into<String>,
        origin_policy: OriginPolicy,
    ) -> Result<Self> {
        let time_column = time_column.into();
        let value_column = value_column.into();
        if time_column.is_empty() || value_column.is_empty() {
            return Err(Error::validation("column names must be nonempty"));
        }
        if time_column == value_column {
            return Err(Error::validation(format!(
                "time and value columns must differ, both are '{time_column}'"
            )));
        }
        Ok(SeriesFileSpec {
            path: path.into(),
            time_column,
            value_column,
            origin_policy,
        })
    }
}

/// Reads a CSV series file into a validated [`TimeSeries`].
pub fn load_series(spec: &SeriesFileSpec) -> Result<TimeSeries> {
    let text = fs::read_to_string(&spec.path).map_err(|e| Error::io(&spec.path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| Error::parse(&spec.path, 1, format!("bad header row: {e}")))?
        .clone();
    let column = |name: &str| -> Result<usize> {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::parse(
                &spec.path,
                1,
                format!(
                    "missing column '{name}' (available: {})",
                    headers.iter().collect::<Vec<_>>().join(", ")
                ),
            )
        })
    };
    let time_idx = column(&spec.time_column)?;
    let value_idx = column(&spec.value_column)?;

    // (raw time, value, raw time text, line number)
    let mut rows: Vec<(f64, f64, String, u64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line())
                .unwrap_or(0);
            Error::parse(&spec.path, line, format!("bad row: {e}"))
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |idx: usize, name: &str| -> Result<f64> {
            let raw = record.get(idx).ok_or_else(|| {
                Error::parse(
                    &spec.path,
                    line,
                    format!("row is missing column '{name}'"),
                )
            })?;
            let parsed: f64 = raw.parse().map_err(|_| {
                Error::parse(
                    &spec.path,
                    line,
                    format!("'{raw}' in column '{name}' is not a number"),
                )
            })?;
            if !parsed.is_finite() {
                return Err(Error::parse(
                    &spec.path,
                    line,
                    format!("'{raw}' in column '{name}' is not finite"),
                ));
            }
            Ok(parsed)
        };
        let t = field(time_idx, &spec.time_column)?;
        let v = field(value_idx, &spec.value_column)?;
        if v <= 0.0 {
            return Err(Error::parse(
                &spec.path,
                line,
                format!("value in column '{}' must be > 0, got {v}", spec.value_column),
            ));
        }
        let raw_time = record.get(time_idx).unwrap_or("").to_string();
        rows.push((t, v, raw_time, line));
    }

    if rows.len() < 2 {
        return Err(Error::parse(
            &spec.path,
            0,
            format!("a series needs at least 2 data rows, found {}", rows.len()),
        ));
    }

    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    for pair in rows.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::parse(
                &spec.path,
                pair[1].3,
                format!(
                    "duplicate time {} (also on line {})",
                    pair[1].0, pair[0].3
                ),
            ));
        }
    }

    let (origin, origin_label) = match spec.origin_policy {
        OriginPolicy::FirstRowAsZero => (rows[0].0, rows[0].2.clone()),
        OriginPolicy::Explicit(v) => (v, v.to_string()),
    };
    let points: Vec<(f64, f64)> = rows.iter().map(|&(t, v, ..)| (t - origin, v)).collect();
    TimeSeries::new(origin_label, points)
        .map_err(|e| Error::parse(&spec.path, 0, e.to_string()))
}

/// A model definition loaded from a config file: exactly one of the three
/// model variants.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    Mono(MonoExpModel),
    Processes(ProcessSet),
    MultiExp(MultiExpModel),
}

impl ModelConfig {
    /// Short variant name used in messages.
    pub fn kind(&self) -> &'static str {
        match self {
            ModelConfig::Mono(_) => "single exponential",
            ModelConfig::Processes(_) => "independent processes",
            ModelConfig::MultiExp(_) => "multi-exponential",
        }
    }

    /// Serializes back to the config format. Reloading the output yields a
    /// field-by-field identical configuration (floats are printed with
    /// round-trip precision).
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        match self {
            ModelConfig::Mono(m) => {
                writeln!(out, "s0 = {}", m.s0()).unwrap();
                writeln!(out, "lambda = {}", m.lambda()).unwrap();
            }
            ModelConfig::Processes(set) => {
                for r in set.rates() {
                    writeln!(out, "process = {r}").unwrap();
                }
            }
            ModelConfig::MultiExp(m) => {
                for c in m.components() {
                    writeln!(out, "component = {},{}", c.weight, c.rate).unwrap();
                }
            }
        }
        out
    }
}

/// Reads a model config file.
pub fn load_model(path: impl AsRef<Path>) -> Result<ModelConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_model(&text, path)
}

/// Parses the model config grammar. `path` is used only in error messages.
pub fn parse_model(text: &str, path: impl AsRef<Path>) -> Result<ModelConfig> {
    let path = path.as_ref();
    let mut s0: Option<f64> = None;
    let mut lambda: Option<f64> = None;
    let mut processes: Vec<f64> = Vec::new();
    let mut components: Vec<ExpComponent> = Vec::new();

    for (index, raw_line) in text.lines().enumerate() {
        let line = index as u64 + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::parse(
                path,
                line,
                format!("expected 'key = value', got '{content}'"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        let number = |field: &str, raw: &str| -> Result<f64> {
            raw.parse::<f64>().map_err(|_| {
                Error::parse(path, line, format!("{field} '{raw}' is not a number"))
            })
        };
        match key {
            "s0" => {
                if s0.is_some() {
                    return Err(Error::parse(path, line, "duplicate key 's0'"));
                }
                s0 = Some(number("s0", value)?);
            }
            "lambda" => {
                if lambda.is_some() {
                    return Err(Error::parse(path, line, "duplicate key 'lambda'"));
                }
                lambda = Some(number("lambda", value)?);
            }
            "process" => {
                processes.push(number("process rate", value)?);
            }
            "component" => {
                let parts: Vec<&str> = value.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::parse(
                        path,
                        line,
                        format!(
                            "component must be 'weight,rate', got '{value}' ({} fields)",
                            parts.len()
                        ),
                    ));
                }
                components.push(ExpComponent {
                    weight: number("component weight", parts[0].trim())?,
                    rate: number("component rate", parts[1].trim())?,
                });
            }
            other => {
                return Err(Error::parse(
                    path,
                    line,
                    format!("unknown key '{other}' (expected s0, lambda, process, or component)"),
                ));
            }
        }
    }

    let mono_present = s0.is_some() || lambda.is_some();
    let variants = usize::from(mono_present)
        + usize::from(!processes.is_empty())
        + usize::from(!components.is_empty());
    if variants == 0 {
        return Err(Error::parse(
            path,
            0,
            "empty model: expected s0/lambda, process, or component entries",
        ));
    }
    if variants > 1 {
        return Err(Error::parse(
            path,
            0,
            "config mixes model variants; use only s0/lambda, only process, or only component keys",
        ));
    }

    let wrap = |e: Error| -> Error {
        match e {
            Error::Validation(message) => Error::parse(path, 0, message),
            other => other,
        }
    };
    if mono_present {
        let (Some(s0), Some(lambda)) = (s0, lambda) else {
            return Err(Error::parse(
                path,
                0,
                "single-exponential model needs both 's0' and 'lambda'",
            ));
        };
        Ok(ModelConfig::Mono(MonoExpModel::new(s0, lambda).map_err(wrap)?))
    } else if !processes.is_empty() {
        Ok(ModelConfig::Processes(ProcessSet::new(processes).map_err(wrap)?))
    } else {
        Ok(ModelConfig::MultiExp(MultiExpModel::new(components).map_err(wrap)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    fn spec_for(f: &tempfile::NamedTempFile) -> SeriesFileSpec {
        SeriesFileSpec::new(f.path(), "year", "usd_tn", OriginPolicy::FirstRowAsZero).unwrap()
    }

    #[test]
    fn loads_a_simple_series() {
        let f = write_temp("year,usd_tn\n2001,7.58\n2002,8.01\n2003,8.47\n");
        let series = load_series(&spec_for(&f)).unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(series.origin_label(), "2001");
        assert_eq!(series.points()[0], (0.0, 7.58));
        assert_eq!(series.points()[2], (2.0, 8.47));
    }

    #[test]
    fn crlf_and_extra_columns_are_fine() {
        let f = write_temp("country,year,usd_tn\r\nUS,2001,7.58\r\nUS,2002,8.01\r\n");
        let series = load_series(&spec_for(&f)).unwrap();
        assert_eq!(series.len(), 2);
    }

    #[test]
    fn rows_sort_by_time() {
        let shuffled = write_temp("year,usd_tn\n2003,8.47\n2001,7.58\n2002,8.01\n");
        let ordered = write_temp("year,usd_tn\n2001,7.58\n2002,8.01\n2003,8.47\n");
        assert_eq!(
            load_series(&spec_for(&shuffled)).unwrap(),
            load_series(&spec_for(&ordered)).unwrap()
        );
    }

    #[test]
    fn explicit_origin_shifts_times() {
        let f = write_temp("year,usd_tn\n2001,7.58\n2002,8.01\n");
        let spec =
            SeriesFileSpec::new(f.path(), "year", "usd_tn", OriginPolicy::Explicit(2000.0))
                .unwrap();
        let series = load_series(&spec).unwrap();
        assert_eq!(series.origin_label(), "2000");
        assert_eq!(series.points()[0].0, 1.0);
    }

    #[test]
    fn missing_file_reports_path() {
        let spec = SeriesFileSpec::new(
            "/nonexistent/series.csv",
            "year",
            "usd_tn",
            OriginPolicy::FirstRowAsZero,
        )
        .unwrap();
        let err = load_series(&spec).unwrap_err();
        assert!(matches!(err, Error::Io { .. }), "{err}");
        assert!(err.to_string().contains("/nonexistent/series.csv"));
    }

    #[test]
    fn missing_column_lists_available() {
        let f = write_temp("year,gdp\n2001,7.58\n2002,8.01\n");
        let err = load_series(&spec_for(&f)).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("missing column 'usd_tn'"), "{message}");
        assert!(message.contains("year, gdp"), "{message}");
    }

    #[test]
    fn unparsable_number_names_row_and_column() {
        let f = write_temp("year,usd_tn\n2001,7.58\n2002,n/a\n");
        let err = load_series(&spec_for(&f)).unwrap_err();
        let message = err.to_string();
        assert!(message.contains(":3:"), "{message}");
        assert!(message.contains("'n/a'"), "{message}");
    }

    #[test]
    fn thousands_separators_are_rejected() {
        // Quoted so the comma survives CSV tokenization; still not a number.
        let f = write_temp("year,usd_tn\n2001,\"7,580\"\n2002,8.01\n");
        let err = load_series(&spec_for(&f)).unwrap_err();
        assert!(err.to_string().contains("not a number"), "{err}");
    }

    #[test]
    fn duplicate_times_are_rejected() {
        let f = write_temp("year,usd_tn\n2001,7.58\n2001,8.01\n");
        let err = load_series(&spec_for(&f)).unwrap_err();
        assert!(err.to_string().contains("duplicate time 2001"), "{err}");
    }

    #[test]
    fn nonpositive_values_are_rejected() {
        let f = write_temp("year,usd_tn\n2001,7.58\n2002,0\n");
        let err = load_series(&spec_for(&f)).unwrap_err();
        assert!(err.to_string().contains("must be > 0"), "{err}");
    }

    #[test]
    fn short_series_is_rejected() {
        let f = write_temp("year,usd_tn\n2001,7.58\n");
        let err = load_series(&spec_for(&f)).unwrap_err();
        assert!(err.to_string().contains("at least 2"), "{err}");
    }

    #[test]
    fn spec_rejects_bad_columns() {
        assert!(SeriesFileSpec::new("x.csv", "", "v", OriginPolicy::FirstRowAsZero).is_err());
        assert!(SeriesFileSpec::new("x.csv", "t", "t", OriginPolicy::FirstRowAsZero).is_err());
    }

    #[test]
    fn parses_mono_model() {
        let config = parse_model("s0 = 7.5805\nlambda = 0.0555\n", "m.cfg").unwrap();
        let ModelConfig::Mono(m) = config else {
            panic!("wrong variant")
        };
        assert_eq!(m.s0(), 7.5805);
        assert_eq!(m.lambda(), 0.0555);
    }

    #[test]
    fn parses_processes_with_comments() {
        let text = "# three independent channels\nprocess = 0.1\nprocess = 0.3 # fastest\n\nprocess = 0.6\n";
        let config = parse_model(text, "m.cfg").unwrap();
        let ModelConfig::Processes(set) = config else {
            panic!("wrong variant")
        };
        assert_eq!(set.rates(), &[0.1, 0.3, 0.6]);
    }

    #[test]
    fn parses_components_in_any_order() {
        let text = "component = 0.1, 0.001\ncomponent = 0.4, 1.0\ncomponent = 0.2, 1e-2\ncomponent = 0.3, 0.1\n";
        let config = parse_model(text, "m.cfg").unwrap();
        let ModelConfig::MultiExp(m) = config else {
            panic!("wrong variant")
        };
        let rates: Vec<f64> = m.components().iter().map(|c| c.rate).collect();
        assert_eq!(rates, vec![1.0, 0.1, 0.01, 0.001]);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let err = parse_model("rate = 0.5\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("unknown key 'rate'"), "{err}");
        let err = parse_model("s0 = 1\ns0 = 2\nlambda = 1\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("duplicate key 's0'"), "{err}");
    }

    #[test]
    fn rejects_mixed_and_incomplete_variants() {
        let err = parse_model("s0 = 2\nlambda = 1\nprocess = 0.1\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("mixes"), "{err}");
        let err = parse_model("s0 = 2\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("both 's0' and 'lambda'"), "{err}");
        let err = parse_model("# nothing\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("empty model"), "{err}");
    }

    #[test]
    fn rejects_malformed_lines() {
        let err = parse_model("s0: 2\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("expected 'key = value'"), "{err}");
        let err = parse_model("component = 0.4\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("'weight,rate'"), "{err}");
        let err = parse_model("component = 0.4,1.0,9\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("3 fields"), "{err}");
        let err = parse_model("lambda = fast\ns0 = 1\n", "m.cfg").unwrap_err();
        assert!(err.to_string().contains("'fast' is not a number"), "{err}");
    }

    #[test]
    fn invalid_model_values_name_the_file() {
        let err = parse_model("component = 0.8,1.0\ncomponent = 0.4,0.5\n", "bad.cfg").unwrap_err();
        let message = err.to_string();
        assert!(message.contains("bad.cfg"), "{message}");
        assert!(message.contains("sum to 1"), "{message}");
    }

    #[test]
    fn round_trips_all_variants() {
        let texts = [
            "s0 = 7.5805\nlambda = 0.0555\n",
            "process = 0.1\nprocess = 0.3\nprocess = 0.6\n",
            "component = 0.4,1.0\ncomponent = 0.3,0.1\ncomponent = 0.2,0.01\ncomponent = 0.1,0.001\n",
        ];
        for text in texts {
            let loaded = parse_model(text, "m.cfg").unwrap();
            let reloaded = parse_model(&loaded.to_config_string(), "roundtrip.cfg").unwrap();
            assert_eq!(loaded, reloaded);
        }
    }

    #[test]
    fn load_model_reads_files() {
        let f = write_temp("process = 0.25\nprocess = 0.75\n");
        let config = load_model(f.path()).unwrap();
        assert_eq!(config.kind(), "independent processes");
    }
}
