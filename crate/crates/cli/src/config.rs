use std::str::FromStr;

use clap::ValueEnum;

use crate::CliError;

pub const SCHEMA: u32 = 1;
pub const DEFAULT_CAP: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub order: usize,
    pub cap: usize,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(order: usize, cap: usize, format: Format, seed: u64) -> Result<Self, CliError> {
        if order == 0 {
            return Err(CliError::Usage("truncation order must be at least 1".into()));
        }
        if cap > crankforge::combinatorics::ENUMERATION_LIMIT {
            return Err(CliError::Usage(format!(
                "enumeration cap {cap} exceeds the hard limit {}",
                crankforge::combinatorics::ENUMERATION_LIMIT
            )));
        }
        Ok(RunConfig {
            order,
            cap,
            format,
            seed,
        })
    }

    /// Rejects brute-force work above the enumeration cap.
    pub fn check_cap(&self, n: usize) -> Result<(), CliError> {
        if n > self.cap {
            Err(CliError::Usage(format!(
                "n = {n} exceeds the enumeration cap {} (raise it with --cap, at most {})",
                self.cap,
                crankforge::combinatorics::ENUMERATION_LIMIT
            )))
        } else {
            Ok(())
        }
    }
}

/// A point of the upper half-plane written `re,im`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauArg(pub f64, pub f64);

impl FromStr for TauArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (re, im) = s.split_once(',').ok_or("expected re,im")?;
        let re = re.trim().parse::<f64>().map_err(|e| e.to_string())?;
        let im = im.trim().parse::<f64>().map_err(|e| e.to_string())?;
        Ok(TauArg(re, im))
    }
}

/// A matrix written `a,b,c,d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaArg(pub [i64; 4]);

impl FromStr for GammaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let arr: [i64; 4] = v.try_into().map_err(|_| "expected a,b,c,d".to_string())?;
        Ok(GammaArg(arr))
    }
}
