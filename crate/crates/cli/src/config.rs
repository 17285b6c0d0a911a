//! Run configuration: parameter validation, caps and the optional
//! key=value config file (explicit flags always win).

use std::fmt;
use std::path::PathBuf;

use maxcurve::curve::DEFAULT_MAX_Q2;
use maxcurve::tower::TowerParams;

/// Default ceiling on group-closure size; the full group at n = 3 (42336)
/// fits, n = 4 (811200) needs an explicit `--max-closure`.
pub const DEFAULT_MAX_CLOSURE: u64 = 50_000;

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
    Text,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat, UsageError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "md" => Ok(OutputFormat::Md),
            "text" => Ok(OutputFormat::Text),
            other => Err(UsageError(format!(
                "unknown format `{other}` (expected json|csv|md|text)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Identities,
    Points,
    Maximality,
    Aut,
    Semigroup,
    RrBasis,
    Quotients,
    Covering,
    Report,
}

/// Everything a run needs, fully validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: TowerParams,
    pub format: OutputFormat,
    pub emit: Option<PathBuf>,
    pub max_field_size: u64,
    pub max_closure: u64,
    pub timing: bool,
    pub all: bool,
}

/// Raw option values as they arrive from flags or the config file; `None`
/// means "not given here".
#[derive(Debug, Default, Clone)]
pub struct RawConfig {
    pub n: Option<u64>,
    pub p: Option<u64>,
    pub h: Option<u32>,
    pub format: Option<String>,
    pub emit: Option<PathBuf>,
    pub max_field_size: Option<u64>,
    pub max_closure: Option<u64>,
    pub no_timing: bool,
    pub all: bool,
}

impl RawConfig {
    /// Fill unset fields from `fallback` (the config file layer).
    pub fn or(self, fallback: RawConfig) -> RawConfig {
        RawConfig {
            n: self.n.or(fallback.n),
            p: self.p.or(fallback.p),
            h: self.h.or(fallback.h),
            format: self.format.or(fallback.format),
            emit: self.emit.or(fallback.emit),
            max_field_size: self.max_field_size.or(fallback.max_field_size),
            max_closure: self.max_closure.or(fallback.max_closure),
            no_timing: self.no_timing || fallback.no_timing,
            all: self.all || fallback.all,
        }
    }

    pub fn validate(self) -> Result<RunConfig, UsageError> {
        let params = match (self.n, self.p, self.h) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                return Err(UsageError(
                    "give either --n or --p/--h, not both".into(),
                ))
            }
            (Some(n), None, None) => TowerParams::from_n(n)
                .map_err(|e| UsageError(e.to_string()))?,
            (None, Some(p), Some(h)) => TowerParams::new(p, h)
                .map_err(|e| UsageError(e.to_string()))?,
            (None, Some(_), None) | (None, None, Some(_)) => {
                return Err(UsageError("--p and --h must be given together".into()))
            }
            (None, None, None) => {
                return Err(UsageError("missing curve parameter: --n or --p/--h".into()))
            }
        };
        let format = match self.format {
            Some(s) => OutputFormat::parse(&s)?,
            None => OutputFormat::Text,
        };
        let max_field_size = self.max_field_size.unwrap_or(DEFAULT_MAX_Q2);
        let max_closure = self.max_closure.unwrap_or(DEFAULT_MAX_CLOSURE);
        if max_field_size == 0 || max_closure == 0 {
            return Err(UsageError("caps must be positive".into()));
        }
        Ok(RunConfig {
            params,
            format,
            emit: self.emit,
            max_field_size,
            max_closure,
            timing: !self.no_timing,
            all: self.all,
        })
    }
}

/// Parse a key=value config file mirroring the long flags. Blank lines and
/// `#` comments are ignored.
pub fn parse_config_file(text: &str) -> Result<RawConfig, UsageError> {
    let mut raw = RawConfig::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| UsageError(format!("config line {}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad_int =
            |k: &str| UsageError(format!("config line {}: bad integer for {k}", lineno + 1));
        match key {
            "n" => raw.n = Some(value.parse().map_err(|_| bad_int("n"))?),
            "p" => raw.p = Some(value.parse().map_err(|_| bad_int("p"))?),
            "h" => raw.h = Some(value.parse().map_err(|_| bad_int("h"))?),
            "format" => raw.format = Some(value.to_string()),
            "emit" => raw.emit = Some(PathBuf::from(value)),
            "max-field-size" => {
                raw.max_field_size = Some(value.parse().map_err(|_| bad_int("max-field-size"))?)
            }
            "max-closure" => {
                raw.max_closure = Some(value.parse().map_err(|_| bad_int("max-closure"))?)
            }
            "no-timing" => raw.no_timing = value == "true" || value == "1",
            "all" => raw.all = value == "true" || value == "1",
            other => {
                return Err(UsageError(format!(
                    "config line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(raw)
}
