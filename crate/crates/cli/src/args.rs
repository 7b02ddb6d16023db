use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubiclat::indecomposables::RangeMode;
use cubiclat::lattice::BoundKind;
use cubiclat::Family;

#[derive(Parser, Debug)]
#[command(name = "cubiclat", version, about = "Lower-bound machinery for universal lattices over simplest cubic fields")]
pub struct Cli {
    /// Output format; `structured` (JSON) is the stable contract.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,

    /// Working precision in bits for certified bound enclosures.
    #[arg(long, global = true, default_value_t = cubiclat::lattice::DEFAULT_PRECISION_BITS,
          value_parser = clap::value_parser!(u32).range(8..=16384))]
    pub precision: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Structured,
}

/// Family given either positionally or as `--family`.
#[derive(Args, Debug, Clone)]
pub struct FamilyArg {
    #[arg(value_name = "FAMILY")]
    pub family_pos: Option<Family>,
    #[arg(long = "family", conflicts_with = "family_pos")]
    pub family_flag: Option<Family>,
}

impl FamilyArg {
    pub fn get(&self) -> Option<Family> {
        self.family_pos.or(self.family_flag)
    }
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    /// Family parameter, at least 7.
    #[arg(long)]
    pub a: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RangeModeArg {
    Lemma,
    Theorem,
}

impl From<RangeModeArg> for RangeMode {
    fn from(m: RangeModeArg) -> Self {
        match m {
            RangeModeArg::Lemma => RangeMode::Lemma,
            RangeModeArg::Theorem => RangeMode::Theorem,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKindArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "B1", alias = "b1")]
    B1,
    #[value(name = "B2", alias = "b2")]
    B2,
}

impl From<BoundKindArg> for BoundKind {
    fn from(k: BoundKindArg) -> Self {
        match k {
            BoundKindArg::C => BoundKind::C,
            BoundKindArg::B1 => BoundKind::B1,
            BoundKindArg::B2 => BoundKind::B2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IndecomposablesAction {
    List,
    Check,
}

#[derive(Args, Debug, Clone)]
pub struct ClassicalArgs {
    /// Classical lattices (the default).
    #[arg(long, conflicts_with = "non_classical")]
    pub classical: bool,
    /// Non-classical lattices, handled by doubling the quadratic form.
    #[arg(long)]
    pub non_classical: bool,
}

impl ClassicalArgs {
    pub fn is_classical(&self) -> bool {
        !self.non_classical
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal polynomial, root isolation and discriminant data.
    FamilyInfo(FieldArgs),

    /// Run a verification suite: 2.1, 3.1, 3.3, 4.1, 4.3, 5.2 or 5.4.
    Verify {
        lemma: String,
        #[arg(long, default_value_t = 7)]
        a_min: i64,
        #[arg(long, default_value_t = 50)]
        a_max: i64,
        #[arg(long, value_enum, default_value_t = RangeModeArg::Lemma)]
        range_mode: RangeModeArg,
        /// X for the counting lemmas; the default grid is used when absent.
        #[arg(long)]
        x: Option<u64>,
        /// B for the counting lemmas (integer, decimal or p/q).
        #[arg(long)]
        b: Option<String>,
        /// Random corpus seed for 2.1.
        #[arg(long, default_value_t = cubiclat::lattice::DEFAULT_CORPUS_SEED)]
        seed: u64,
        #[arg(long, default_value_t = cubiclat::lattice::DEFAULT_CORPUS_SIZE)]
        corpus_size: usize,
        #[arg(long, default_value_t = 10)]
        max_norm: u64,
    },

    /// List candidate indecomposables or check them with the dominated-element oracle.
    Indecomposables {
        #[arg(value_enum)]
        action: IndecomposablesAction,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = RangeModeArg::Lemma)]
        range_mode: RangeModeArg,
        /// Restrict to one candidate (Shanks needs --v as well).
        #[arg(long)]
        w: Option<i64>,
        #[arg(long)]
        v: Option<i64>,
    },

    /// Search for codifferent trace certificates of theorem-range candidates.
    Certificate {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        w: Option<i64>,
        #[arg(long)]
        v: Option<i64>,
        /// Trace value to certify (default: 1 for Shanks, 2 otherwise).
        #[arg(long)]
        target: Option<i64>,
        /// Search box half-width for h (default: 2a).
        #[arg(long)]
        coeff_bound: Option<i64>,
    },

    /// Count lattice vectors of exact norm n.
    ShortVectors {
        #[arg(long)]
        gram: PathBuf,
        #[arg(long)]
        n: u64,
        /// Also list the vectors.
        #[arg(long)]
        list: bool,
    },

    /// Evaluate C(r, n), B1(R, n) or B2(R, n).
    Bounds {
        #[arg(value_enum)]
        kind: BoundKindArg,
        /// r for C, R for B1 and B2.
        #[arg(long, alias = "R")]
        r: u64,
        #[arg(long)]
        n: u64,
        /// Lattice determinant for C (integer, decimal or p/q); defaults to 1.
        #[arg(long)]
        det: Option<String>,
    },

    /// Transfer an O_K-lattice to a Z-lattice of triple rank via Tr(delta Q).
    TraceLattice {
        #[command(flatten)]
        field: FieldArgs,
        /// O_K-Gram document; the unit lattice <1> when absent.
        #[arg(long)]
        ok_gram: Option<PathBuf>,
        /// h = x,y,z with delta = (x + y rho + z rho^2) / f'(rho).
        #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
        h: String,
    },

    /// Lower bound on the rank of kO_K-universal lattices.
    RankBound {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        classical: ClassicalArgs,
    },

    /// Count 7 <= a <= X with a' <= B, with B given directly or as the bound at (R, k).
    Density {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        x: u64,
        #[arg(long, conflicts_with_all = ["rank", "k"])]
        b: Option<String>,
        #[arg(long, requires = "k")]
        rank: Option<u64>,
        #[arg(long, requires = "rank")]
        k: Option<u64>,
    },

    /// Count the a <= X not yet shown to have rank above a^(2 - 2 eps).
    Exceptional {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        x: u64,
        /// eps as p/q (or a decimal), 0 < eps < 1.
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        classical: ClassicalArgs,
    },
}
