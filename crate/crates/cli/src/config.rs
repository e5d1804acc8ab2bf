use std::env;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use hurwitz_lab::SizeGuards;

use crate::CliError;

/// On-disk configuration, merged underneath the command-line flags.
/// `max_degree`, `max_genus`, and `max_steps` are coarse knobs that
/// map onto the corresponding guard fields; `guards` sets individual
/// fields directly.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub max_degree: Option<usize>,
    pub max_genus: Option<usize>,
    pub max_steps: Option<usize>,
    pub output_format: Option<String>,
    pub output_path: Option<PathBuf>,
    pub guards: Option<GuardOverrides>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuardOverrides {
    pub max_dp_degree: Option<usize>,
    pub max_brute_degree: Option<usize>,
    pub max_brute_steps: Option<usize>,
    pub max_orbit_steps: Option<usize>,
    pub max_genus: Option<usize>,
    pub max_cayley_degree: Option<usize>,
}

/// Loads the config named by `--config`, falling back to the
/// HURWITZ_LAB_CONFIG environment variable, then to the defaults.
pub fn load(flag: Option<&Path>) -> Result<RunConfig, CliError> {
    let path = flag
        .map(Path::to_path_buf)
        .or_else(|| env::var_os("HURWITZ_LAB_CONFIG").map(PathBuf::from));
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError {
        code: 4,
        message: format!("cannot read config {}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError {
        code: 2,
        message: format!("invalid config {}: {e}", path.display()),
    })
}

/// Coarse knobs shared by the config file and the command line.
#[derive(Debug, Default, Clone, Copy)]
pub struct Knobs {
    pub max_degree: Option<usize>,
    pub max_genus: Option<usize>,
    pub max_steps: Option<usize>,
}

/// Resolves the effective guards: defaults, then config, then flags.
/// Raising any guard above its default requires the acknowledgment
/// flag; lowering never does.
pub fn effective_guards(
    config: &RunConfig,
    cli_knobs: Knobs,
    acknowledged: bool,
) -> Result<SizeGuards, CliError> {
    let mut g = SizeGuards::default();
    for knobs in [
        Knobs {
            max_degree: config.max_degree,
            max_genus: config.max_genus,
            max_steps: config.max_steps,
        },
        cli_knobs,
    ] {
        if let Some(d) = knobs.max_degree {
            g.max_dp_degree = d;
            g.max_brute_degree = d;
            g.max_cayley_degree = d;
        }
        if let Some(s) = knobs.max_steps {
            g.max_brute_steps = s;
            g.max_orbit_steps = s;
        }
        if let Some(gn) = knobs.max_genus {
            g.max_genus = gn;
        }
    }
    if let Some(over) = &config.guards {
        if let Some(v) = over.max_dp_degree {
            g.max_dp_degree = v;
        }
        if let Some(v) = over.max_brute_degree {
            g.max_brute_degree = v;
        }
        if let Some(v) = over.max_brute_steps {
            g.max_brute_steps = v;
        }
        if let Some(v) = over.max_orbit_steps {
            g.max_orbit_steps = v;
        }
        if let Some(v) = over.max_genus {
            g.max_genus = v;
        }
        if let Some(v) = over.max_cayley_degree {
            g.max_cayley_degree = v;
        }
    }

    let defaults = SizeGuards::default();
    let raised = g.max_dp_degree > defaults.max_dp_degree
        || g.max_brute_degree > defaults.max_brute_degree
        || g.max_brute_steps > defaults.max_brute_steps
        || g.max_orbit_steps > defaults.max_orbit_steps
        || g.max_genus > defaults.max_genus
        || g.max_cayley_degree > defaults.max_cayley_degree;
    if raised && !acknowledged {
        return Err(CliError {
            code: 3,
            message: "raising a size guard above its default requires --i-know-this-is-huge"
                .to_string(),
        });
    }
    Ok(g)
}
