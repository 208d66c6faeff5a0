use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use gkdim_core::spanning::EkBound;
use gkdim_core::{GradingSpec, MultiDegree};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything a run depends on, echoed into its output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub grading: GradingSpec,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tmax: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multidegrees: Vec<MultiDegree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    /// `None` means derived per job; the derived value is in each result.
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    pub format: Format,
    #[serde(default)]
    pub latex: bool,
    #[serde(default)]
    pub ek_bound: EkBound,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_word_total: Option<u32>,
    #[serde(default)]
    pub strict: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<String>,
    pub version: String,
}

impl RunConfig {
    pub fn new(command: &str, grading: GradingSpec, characteristic: u64, m: usize, seed: u64, format: Format) -> Self {
        RunConfig {
            command: command.to_string(),
            grading,
            characteristic,
            m,
            tmax: None,
            total: None,
            multidegrees: Vec::new(),
            window: None,
            n: None,
            trials: None,
            seed,
            points: None,
            format,
            latex: false,
            ek_bound: EkBound::Exact,
            max_word_total: None,
            strict: false,
            extra: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// `Y/Z` with comma-separated exponents, e.g. `2,0/1,1`.
pub fn parse_multidegree(s: &str) -> Result<MultiDegree, String> {
    let (y, z) = s
        .split_once('/')
        .ok_or_else(|| format!("multidegree {s:?}: expected y-exponents/z-exponents, e.g. 2,0/1,1"))?;
    let list = |part: &str| -> Result<Vec<u32>, String> {
        part.split(',')
            .map(|e| e.trim().parse::<u32>().map_err(|_| format!("bad exponent {e:?} in {s:?}")))
            .collect()
    };
    MultiDegree::new(list(y)?, list(z)?).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_json() {
        let mut c = RunConfig::new("rank", GradingSpec::KStar(2), 5, 2, 9, Format::Csv);
        c.total = Some(3);
        c.multidegrees = vec![MultiDegree::new(vec![1, 0], vec![0, 2]).unwrap()];
        c.n = Some(30);
        c.points = Some(12);
        c.ek_bound = EkBound::Letters;
        c.strict = true;
        c.extra = vec!["z1".into()];
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"grading\":\"kstar:2\""));
        let back: RunConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn multidegree_syntax() {
        let d = parse_multidegree("2,0/1,1").unwrap();
        assert_eq!(d.y, vec![2, 0]);
        assert_eq!(d.z, vec![1, 1]);
        assert!(parse_multidegree("2,0").is_err());
        assert!(parse_multidegree("2/1,1").is_err());
    }
}
