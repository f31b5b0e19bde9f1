use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Graded Hopf algebras over F2: Milnor basis arithmetic, sub and quotient
/// Hopf algebras, resolutions, Ext charts, Cartan-Eilenberg E2 pages and
/// windowed vanishing checks.
///
/// Charts use the Adams convention: the horizontal axis is t - s and the
/// vertical axis is s. Every degree range must be given explicitly.
/// The number of worker threads is read from HOPF_THREADS.
#[derive(Debug, Parser)]
#[command(name = "hopf", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Milnor basis of A, or the monomial basis of A_*, by degree.
    Basis {
        #[arg(long)]
        max_degree: u32,
        /// List monomials of the dual A_* instead.
        #[arg(long)]
        dual: bool,
    },
    /// Multiply two elements, e.g. `mul "Sq(2)" "Sq(1)"`.
    Mul {
        a: String,
        b: String,
        /// Multiply in the polynomial algebra A_* instead.
        #[arg(long)]
        dual: bool,
    },
    /// Coproduct of an element of A_*, e.g. `coprod "z2"`.
    Coprod { element: String },
    /// Antipode of an element of A_*.
    Antipode { element: String },
    /// Basis of a sub-Hopf algebra given by a profile, or of a quotient.
    ProfileBasis {
        #[command(flatten)]
        which: ProfileChoice,
        #[arg(long)]
        max_degree: u32,
    },
    /// Dimensions of A_* cotensored over a quotient with F2.
    Cotensor {
        /// Quotient preset: E, E(n), A(n), P(n), P(n)^(s), A^(s).
        #[arg(long)]
        quotient: String,
        #[arg(long)]
        max_degree: u32,
        /// Profile preset whose dimensions the result must match.
        #[arg(long)]
        expect_profile: Option<String>,
    },
    /// Generators of a minimal resolution, one `s t count` line each.
    Resolve {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_enum)]
        module: ModulePreset,
        #[arg(long)]
        max_s: usize,
        #[arg(long)]
        max_t: i32,
    },
    /// Ext over a finite algebra, one `s t dim` line per class.
    Ext {
        #[command(flatten)]
        pair: ExtArgs,
        #[arg(long)]
        json: bool,
    },
    /// Coext over a finite quotient of A_*, computed on duals.
    Coext {
        /// Finite quotient preset, e.g. A(1) or E(1).
        #[arg(long)]
        coalgebra: String,
        #[arg(long, value_enum)]
        source: ModulePreset,
        #[arg(long, value_enum)]
        target: ModulePreset,
        #[arg(long)]
        max_s: usize,
        #[arg(long)]
        max_t: i32,
        #[arg(long)]
        json: bool,
    },
    /// Render an Ext chart (computed, or read from a JSON file).
    Chart {
        /// Chart JSON as written by `ext --json`.
        #[arg(long, conflicts_with_all = ["algebra", "source", "target", "max_s", "max_t"])]
        input: Option<PathBuf>,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, value_enum)]
        source: Option<ModulePreset>,
        #[arg(long, value_enum)]
        target: Option<ModulePreset>,
        #[arg(long)]
        max_s: Option<usize>,
        #[arg(long)]
        max_t: Option<i32>,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cartan-Eilenberg E2 page with the subquotient check against the abutment.
    Ce2 {
        #[arg(long, value_enum)]
        form: FormArg,
        /// The larger algebra S (or coalgebra H), as a finite preset.
        #[arg(long)]
        big: String,
        /// The normal subalgebra R (or quotient K), as a finite preset.
        #[arg(long)]
        small: String,
        #[arg(long, value_enum)]
        source: Option<ModulePreset>,
        #[arg(long, value_enum)]
        target: Option<ModulePreset>,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_u: i32,
        #[arg(long)]
        json: bool,
    },
    /// Run vanishing scenarios; exit 1 if any check fails.
    Vanish {
        /// Scenario config JSON (one scenario or a list).
        #[arg(long, conflicts_with_all = ["scenario", "n", "window"])]
        config: Option<PathBuf>,
        /// H_BP, MSP_BP, YN_MSP or YN_YNEXT.
        #[arg(long)]
        scenario: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Window as MAX:GUARD; repeat for a ladder.
        #[arg(long)]
        window: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// The comodule algebra H_*(Y_s) or a presentation from a JSON file.
    Ys {
        #[arg(long, conflicts_with = "presentation")]
        s: Option<u32>,
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Generator whose coaction to print.
        #[arg(long, requires = "coaction")]
        element: Option<String>,
        #[arg(long, requires = "element")]
        coaction: bool,
        /// Run the comodule, ideal and splitting checks through this degree.
        #[arg(long)]
        check_degree: Option<u32>,
    },
    /// Dimension, top degree and Poincare pairing of A(n).
    PdCheck {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ProfileChoice {
    /// Profile preset: P(n), P(n)^(s), A^(s).
    #[arg(long)]
    pub profile: Option<String>,
    /// Profile JSON file: {"caps":[...],"tail":...}.
    #[arg(long)]
    pub profile_file: Option<PathBuf>,
    /// Quotient preset: E, E(n), A(n) or any profile preset.
    #[arg(long)]
    pub quotient: Option<String>,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Finite preset: A(n), E(n), or a finite quotient.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Debug, Args)]
pub struct ExtArgs {
    #[command(flatten)]
    pub alg: AlgebraArgs,
    #[arg(long, value_enum)]
    pub source: ModulePreset,
    #[arg(long, value_enum)]
    pub target: ModulePreset,
    #[arg(long)]
    pub max_s: usize,
    #[arg(long)]
    pub max_t: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModulePreset {
    Trivial,
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Algebras,
    First,
    Second,
}
