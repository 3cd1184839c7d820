//! Field specs, precision policy and JSON inputs.

use std::fs;

use fewnomial::numeric::local::{DEFAULT_PRECISION, DEFAULT_PRECISION_CEILING};
use fewnomial::numeric::{FieldKind, FieldSpec, PrecisionPolicy};
use fewnomial::{Error, Result};
use serde::de::DeserializeOwned;

pub const CEILING_VAR: &str = "FEWNOMIAL_PRECISION_CEILING";

pub fn field_spec(field: FieldKind, p: Option<u64>, precision: Option<u32>) -> Result<FieldSpec> {
    let spec = match field {
        FieldKind::R => FieldSpec::real(),
        FieldKind::Qp | FieldKind::Fpt => {
            let p = p.ok_or_else(|| Error::InvalidInput("--p is required for Qp and Fpt".into()))?;
            let prec = precision.unwrap_or(DEFAULT_PRECISION);
            if field == FieldKind::Qp {
                FieldSpec::qp(p, prec)
            } else {
                FieldSpec::fpt(p, prec)
            }
        }
    };
    spec.validate()?;
    Ok(spec)
}

/// `--precision` as the starting point, the ceiling from the environment.
pub fn policy(precision: Option<u32>) -> Result<PrecisionPolicy> {
    let ceiling = match std::env::var(CEILING_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::InvalidInput(format!("{CEILING_VAR} must be a positive integer, got {v:?}")))?,
        Err(_) => DEFAULT_PRECISION_CEILING,
    };
    let initial = precision.unwrap_or(DEFAULT_PRECISION);
    if initial > ceiling {
        return Err(Error::Guardrail(format!("precision {initial} is above the ceiling {ceiling}")));
    }
    Ok(PrecisionPolicy { initial, ceiling })
}

/// Default `ε` per field: `1/4` over the reals, `p` over `Q_p`, `t` over
/// `F_p((t))`.
pub fn default_eps(field: &FieldSpec) -> String {
    match field.field {
        FieldKind::R => "1/4".into(),
        FieldKind::Qp => field.p.unwrap_or(2).to_string(),
        FieldKind::Fpt => "t".into(),
    }
}

/// Reads `--input`: inline JSON when it starts with `{`, `-` for stdin,
/// a file path otherwise.
pub fn read_json<T: DeserializeOwned>(input: Option<&str>) -> Result<T> {
    let src = input.ok_or_else(|| Error::InvalidInput("--input is required".into()))?;
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else if src == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?
    } else {
        fs::read_to_string(src).map_err(|e| Error::InvalidInput(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{src}: {e}")))
}

/// `"7"` or an inclusive range `"2..30"`.
pub fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok((a, b))
        }
        None => {
            let a = num(s)?;
            Ok((a, a))
        }
    }
}
