use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use klcells::cells::EdgeConvention;
use klcells::coxeter::CoxeterSystem;
use klcells::kl::Params;
use klcells::laurent::MonomialOrder;

use crate::CliError;

/// Shipped data directory of the source tree.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Everything a run depends on. A JSON file with these fields can stand in
/// for command-line flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: String,
    /// Functionals of a monomial order, e.g. `"0,1;1,0"`.
    pub order: Option<String>,
    /// One value per generator or one per generator class.
    pub weight: Option<Vec<i64>>,
    pub out: PathBuf,
    pub data: Option<PathBuf>,
    pub checks: Vec<String>,
    pub threads: Option<usize>,
    pub dump: Vec<String>,
    pub convention: EdgeConvention,
    pub cross_check: bool,
    pub seed: u64,
    /// Number of `w` sampled for the R-identity (0 = all).
    pub r_sample: usize,
    pub progress: bool,
    pub force: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            system: String::new(),
            order: None,
            weight: None,
            out: PathBuf::from("out"),
            data: None,
            checks: Vec::new(),
            threads: None,
            dump: vec!["tsv".into()],
            convention: EdgeConvention::default(),
            cross_check: false,
            seed: DEFAULT_SEED,
            r_sample: 0,
            progress: false,
            force: false,
        }
    }
}

/// The parameter source of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Order(MonomialOrder),
    /// Weight per generator class.
    Weight(Vec<i64>),
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn data_dir(&self) -> PathBuf {
        self.data.clone().unwrap_or_else(default_data_dir)
    }

    pub fn system(&self) -> Result<CoxeterSystem, CliError> {
        if self.system.is_empty() {
            return Err(CliError::Config("no system type given".into()));
        }
        Ok(CoxeterSystem::new(self.system.parse()?)?)
    }

    pub fn mode(&self, sys: &CoxeterSystem) -> Result<Mode, CliError> {
        match (&self.order, &self.weight) {
            (Some(_), Some(_)) => Err(CliError::Config("give either an order or a weight, not both".into())),
            (None, None) => Err(CliError::Config("give an order or a weight".into())),
            (Some(o), None) => Ok(Mode::Order(parse_order(o)?)),
            (None, Some(w)) => Ok(Mode::Weight(class_weights(sys, w)?)),
        }
    }

    pub fn params(&self, sys: &CoxeterSystem) -> Result<Params, CliError> {
        Ok(match self.mode(sys)? {
            Mode::Order(o) => Params::generic(sys, o)?,
            Mode::Weight(w) => Params::weight_per_class(sys, &w)?,
        })
    }
}

/// `"0,1;1,0"`: one comma-separated functional per `;`.
pub fn parse_order(text: &str) -> Result<MonomialOrder, CliError> {
    let functionals = text
        .split(';')
        .map(|f| {
            f.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<i64>, _>>()
                .map_err(|e| CliError::Config(format!("order {text:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rank = functionals.first().map_or(0, |f| f.len());
    MonomialOrder::new(rank, functionals).map_err(|e| CliError::Config(format!("order {text:?}: {e}")))
}

pub fn parse_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| CliError::Config(format!("{text:?}: {e}"))))
        .collect()
}

/// Accept one value per generator (constant on classes) or one per class.
pub fn class_weights(sys: &CoxeterSystem, values: &[i64]) -> Result<Vec<i64>, CliError> {
    let classes = sys.classes();
    if values.iter().any(|&x| x <= 0) {
        return Err(CliError::Config(format!("weights must be positive: {values:?}")));
    }
    if values.len() == classes.count {
        return Ok(values.to_vec());
    }
    if values.len() != sys.rank() {
        return Err(CliError::Config(format!(
            "{} weights for {} generators in {} classes",
            values.len(),
            sys.rank(),
            classes.count
        )));
    }
    let mut out = vec![0; classes.count];
    for (s, &x) in values.iter().enumerate() {
        let c = classes.class_of[s];
        if out[c] != 0 && out[c] != x {
            return Err(CliError::Config(format!(
                "weights {values:?} differ on conjugate generators"
            )));
        }
        out[c] = x;
    }
    Ok(out)
}
