use std::io::Write as _;
use std::path::Path;

use serde_json::json;

use hurwitz_lab::{BigRational, SizeGuards};

use crate::CliError;

/// JSON envelope: `{meta: {version, command, config}, data: …}`.
/// serde_json's map keeps keys sorted, so output bytes are stable.
pub fn envelope(
    command: &str,
    guards: &SizeGuards,
    format: &str,
    data: serde_json::Value,
) -> String {
    let doc = json!({
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "config": {
                "format": format,
                "guards": {
                    "max_dp_degree": guards.max_dp_degree,
                    "max_brute_degree": guards.max_brute_degree,
                    "max_brute_steps": guards.max_brute_steps,
                    "max_orbit_steps": guards.max_orbit_steps,
                    "max_genus": guards.max_genus,
                    "max_cayley_degree": guards.max_cayley_degree,
                },
            },
        },
        "data": data,
    });
    let mut body = serde_json::to_string_pretty(&doc).expect("serializable document");
    body.push('\n');
    body
}

/// Rationals serialize as "p/q" in lowest terms with an explicit
/// denominator, so integer-valued terms still read unambiguously.
pub fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A flat CSV table: header row plus records, all fields free of
/// commas by construction (cycle types print with '+').
pub fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes to stdout, or atomically (temp file + rename) when a path is
/// given.
pub fn write_out(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    let io_err = |what: &str, e: std::io::Error| CliError {
        code: 4,
        message: format!("{what}: {e}"),
    };
    match path {
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| io_err("cannot write to stdout", e)),
        Some(path) => {
            let name = path
                .file_name()
                .ok_or_else(|| CliError {
                    code: 4,
                    message: format!("output path {} has no file name", path.display()),
                })?
                .to_string_lossy()
                .into_owned();
            let tmp = path.with_file_name(format!(".{name}.tmp-{}", std::process::id()));
            std::fs::write(&tmp, body)
                .map_err(|e| io_err(&format!("cannot write {}", tmp.display()), e))?;
            std::fs::rename(&tmp, path).map_err(|e| {
                let _ = std::fs::remove_file(&tmp);
                io_err(&format!("cannot move output into {}", path.display()), e)
            })
        }
    }
}
