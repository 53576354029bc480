//! Command-line front end: argument parsing, command dispatch and JSON reports.

mod commands;

pub use commands::certificate_from_json;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use acyl::group::{load_group_file, GraphOfGroups, GroupError};

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Parser, Debug)]
#[command(
    name = "acyl",
    version,
    about = "Free subgroups, entropy bounds and splittings for groups acting on trees"
)]
pub struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Group file; bare names are also looked up among the bundled groups.
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Elliptic or hyperbolic, with the fixed set or axis near the base vertex.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 4)]
        window: u64,
    },
    /// Runs the extraction pipeline on the ball of radius `--ball` and verifies the certificate.
    Extract {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        ball: usize,
        /// Acylindricity constant; probed when absent.
        #[arg(long)]
        k: Option<u64>,
        /// Ping-pong window; defaults to 2(4 tau + 2).
        #[arg(long)]
        window: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        /// Longest relation ruled out by the freeness check.
        #[arg(long, default_value_t = 6)]
        verify_len: usize,
    },
    /// Re-verifies the certificate embedded in an `extract` report.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// An `extract` report, or a bare certificate object.
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long, default_value_t = 6)]
        verify_len: usize,
        #[arg(long)]
        window: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
    /// Ball growth and the Fekete upper estimates.
    Entropy {
        #[command(flatten)]
        group: GroupArgs,
        /// Largest radius enumerated.
        #[arg(long = "N")]
        n: usize,
        /// Use the ball of this radius as generating set.
        #[arg(long)]
        ball: Option<usize>,
        /// Also extract a free subgroup and report its entropy lower bound.
        #[arg(long)]
        schottky: bool,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Entropy-cardinality check on the ball of radius `--ball`.
    Certify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        ball: usize,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 6)]
        verify_len: usize,
    },
    /// Relator set, metric conditions and the W_r injection for a triangle group.
    Smallcancel {
        /// `p,q,r`.
        #[arg(long)]
        pqr: String,
        #[arg(long, default_value_t = 3)]
        blocks: usize,
        #[arg(long = "E")]
        e: Option<f64>,
        #[arg(long = "D")]
        d: Option<f64>,
    },
    /// Euler characteristic, type, presentation and splitting of a 2-orbifold.
    Orbifold {
        /// `g,h;p1,p2,...`.
        #[arg(long, allow_hyphen_values = true)]
        signature: String,
    },
    /// Finiteness bounds and triangular presentations.
    Census {
        #[command(subcommand)]
        which: CensusCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum CensusCommand {
    /// Largest generating set allowed by an entropy bound.
    MaxGens {
        #[arg(long)]
        k: u64,
        #[arg(long = "E")]
        e: f64,
    },
    /// Number of presentations with bounded generators and relator length.
    PresCount {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        l: u32,
    },
    /// Number of fundamental groups of the 3-manifolds with bounded entropy and diameter.
    #[command(name = "3mfd")]
    ThreeManifolds {
        #[arg(long = "E")]
        e: f64,
        #[arg(long = "D")]
        d: f64,
    },
    /// Bounds on surgery curves and rank.
    Surgery {
        #[arg(long = "N")]
        n: u64,
        /// Free-rank split `n,k` for the sharper bounds.
        #[arg(long)]
        split: Option<String>,
    },
    /// Triangular presentation from the ball of radius `--ball`.
    TriPres {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        ball: usize,
        /// Compare ball sizes up to this radius through coset enumeration.
        #[arg(long)]
        radius: Option<usize>,
    },
}

/// A failure with its exit code and machine-readable description.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub position: Option<(usize, usize)>,
}

impl Failure {
    pub fn domain(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DOMAIN,
            kind,
            message: message.into(),
            position: None,
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            kind: "parse",
            message: message.into(),
            position: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut e = json!({ "kind": self.kind, "message": self.message });
        if let Some((line, column)) = self.position {
            e["line"] = json!(line);
            e["column"] = json!(column);
        }
        json!({ "error": e })
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let position = match &e {
            GroupError::Parse { line, column, .. } => Some((*line, *column)),
            _ => None,
        };
        if e.is_parse_error() {
            Self {
                code: EXIT_PARSE,
                kind: "parse",
                message: e.to_string(),
                position,
            }
        } else if let GroupError::Io(_) = e {
            Self::domain("io", e.to_string())
        } else {
            Self::domain("group", e.to_string())
        }
    }
}

pub(crate) fn bundled_dir() -> PathBuf {
    std::env::var_os("ACYL_GROUPS")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../groups"))
}

pub(crate) fn load_group(source: &str) -> Result<GraphOfGroups, Failure> {
    let direct = PathBuf::from(source);
    let path = if direct.exists() {
        direct
    } else {
        bundled_dir().join(source)
    };
    if !path.exists() {
        return Err(Failure::domain(
            "io",
            format!("group file `{source}` not found"),
        ));
    }
    Ok(load_group_file(&path)?)
}

/// Output of one invocation: the exit code and the JSON document for stdout.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name), runs the command and renders the report.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: "--threads must be positive\n".into(),
            };
        }
        // only the first pool configuration in a process takes effect
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let start = std::time::Instant::now();
    match commands::dispatch(&cli.command) {
        Ok(mut report) => {
            if cli.timing {
                report["timing"] = json!({ "millis": start.elapsed().as_millis() as u64 });
            }
            Outcome {
                code: 0,
                stdout: render(&report),
                stderr: String::new(),
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: render(&f.to_json()),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
