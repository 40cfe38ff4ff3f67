use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use shiftlab_core::characters::CharKind;
use shiftlab_core::liealg::{build_root_system, DEFAULT_WEYL_CAP, DEFAULT_WORD_CAP};
use shiftlab_core::qseries::{set_grid_bound, GRID_BOUND};
use shiftlab_core::{RootSystem, ShiftCase, SimpleLieType, Variant, WeylGroup};

#[derive(Parser, Debug)]
#[command(name = "shiftlab", version, about = "Shift systems, multiplet characters and alcove reductions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    /// Lie type, e.g. A2, B3, G2.
    #[arg(long)]
    pub algebra: String,
    #[arg(long, default_value = "nonsuper")]
    pub variant: String,
    #[arg(long, default_value_t = 2)]
    pub m: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root-system data.
    Info {
        #[arg(long)]
        algebra: String,
    },
    /// The representatives Λ with their weak/strong/alcove flags.
    Lambda {
        #[command(flatten)]
        case: CaseArgs,
        /// Check the strong condition along every reduced word of w0.
        #[arg(long)]
        all_words: bool,
    },
    /// Exhaustive checks; exit status 1 on any failure.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        case: CaseArgs,
        /// Largest height of α (alcove-independence).
        #[arg(long, default_value_t = 3)]
        height: i64,
    },
    /// Character of one multiplicity space W_{−α+λ}.
    Char {
        #[command(flatten)]
        case: CaseArgs,
        /// Dynkin labels of α ∈ P₊ ∩ Q, comma separated; 0 for α = 0.
        #[arg(long, default_value = "0")]
        alpha: String,
        /// "minuscule-index,digit1,…,digitr"; defaults to λ = 0.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Character of the whole module, summed over α.
    Ftchar {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Formula against an independent computation; exit status 1 on mismatch.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, default_value_t = 30)]
        order: usize,
        /// Largest height of α (verma) or label radius of β (walls).
        #[arg(long, default_value_t = 2)]
        height: i64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    WeakStrong,
    ShiftFacts,
    AlcoveIndependence,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Wchar,
    Verma,
    Walls,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Ch,
    Sch,
    Ramond,
}

impl From<KindArg> for CharKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ch => CharKind::Ch,
            KindArg::Sch => CharKind::Sch,
            KindArg::Ramond => CharKind::Ramond,
        }
    }
}

/// Enumeration bounds; `SHIFTLAB_CAPS="weyl=N,words=N,grid=N"` overrides
/// any subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub weyl: usize,
    pub words: usize,
    pub grid: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { weyl: DEFAULT_WEYL_CAP, words: DEFAULT_WORD_CAP, grid: GRID_BOUND }
    }
}

impl Caps {
    pub fn parse(s: &str) -> anyhow::Result<Self> {
        let mut caps = Caps::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item.split_once('=').with_context(|| format!("SHIFTLAB_CAPS entry {item:?} is not key=value"))?;
            let n: u64 = v.trim().parse().with_context(|| format!("SHIFTLAB_CAPS value {v:?} is not a number"))?;
            match k.trim() {
                "weyl" => caps.weyl = n as usize,
                "words" => caps.words = n as usize,
                "grid" => caps.grid = n,
                other => bail!("unknown SHIFTLAB_CAPS key {other:?} (weyl, words, grid)"),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> anyhow::Result<Self> {
        match std::env::var("SHIFTLAB_CAPS") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn install(&self) {
        set_grid_bound(self.grid);
    }
}

pub fn root_system(algebra: &str) -> anyhow::Result<RootSystem> {
    Ok(build_root_system(SimpleLieType::parse(algebra)?)?)
}

pub fn build_case(a: &CaseArgs, caps: &Caps) -> anyhow::Result<ShiftCase> {
    let variant = Variant::parse(&a.variant)?;
    let rs = root_system(&a.algebra)?;
    let weyl = WeylGroup::enumerate(&rs, caps.weyl)?;
    let mut c = ShiftCase::with_weyl(Arc::new(rs), Arc::new(weyl), variant, a.m)?;
    c.word_cap = caps.words;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_parsing() {
        let c = Caps::parse("weyl=10, grid=48").unwrap();
        assert_eq!(c.weyl, 10);
        assert_eq!(c.grid, 48);
        assert_eq!(c.words, DEFAULT_WORD_CAP);
        assert_eq!(Caps::parse("").unwrap(), Caps::default());
        assert!(Caps::parse("weyl").is_err());
        assert!(Caps::parse("depth=3").is_err());
    }

    #[test]
    fn super_needs_series_b() {
        let a = CaseArgs { algebra: "A2".into(), variant: "super".into(), m: 2 };
        let e = build_case(&a, &Caps::default()).unwrap_err();
        assert!(e.to_string().contains("series B"));
    }
}
