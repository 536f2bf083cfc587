//! Command dispatch for the `grcone` binary.
//!
//! Every subcommand is a thin wrapper over one library operation. Exit status
//! is 0 on success, 1 on a parse or validation error, and 2 when a
//! verification (oracle verdict, certificate checks) fails.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use grcone::document::{ConeReport, HnReport, LambdaReport, WedgeReport};
use grcone::{
    build_certificate, cross_check, dual_split, exterior_power_split, frobenius_split, parse_input,
    pseff_cone, shift_strong, verify_certificate, verify_theorem_split, BundleDescriptor,
    CoverModel, EffectivityCertificate, Error, InputDocument, SplitBundle, StrongHnData,
};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "grcone",
    version,
    about = "Exact effective cones of Grassmann bundles over curves"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Harder–Narasimhan type of a bundle (computed for split bundles).
    Hn {
        #[arg(long)]
        input: String,
    },
    /// The boundary slope λ for quotients of rank r.
    Lambda {
        #[arg(long)]
        input: String,
        #[arg(short = 'r', long = "rank")]
        r: usize,
    },
    /// Extremal rays of the pseudo-effective cone of Gr_r(E).
    Cone {
        #[arg(long)]
        input: String,
        #[arg(short = 'r', long = "rank")]
        r: usize,
    },
    /// j-fold Frobenius pullback of a split bundle.
    Frobenius {
        #[arg(long)]
        input: String,
        #[arg(short = 'j')]
        j: u32,
    },
    /// Moves stabilized data j Frobenius steps further.
    Shift {
        #[arg(long)]
        input: String,
        #[arg(short = 'j')]
        j: u32,
    },
    /// Dual of a split bundle.
    Dual {
        #[arg(long)]
        input: String,
    },
    /// Exponents of the r-th exterior power of a split bundle.
    Wedge {
        #[arg(long)]
        input: String,
        #[arg(short = 'r', long = "rank")]
        r: usize,
    },
    /// Brute-force check of λ and boundary effectivity on P^1.
    Oracle {
        #[arg(long)]
        input: String,
        #[arg(short = 'r', long = "rank")]
        r: usize,
    },
    /// Builds an effectivity certificate for the boundary class.
    Certify {
        #[arg(long)]
        input: String,
        #[arg(long)]
        cover: String,
        #[arg(short = 'r', long = "rank")]
        r: usize,
        /// Also run the section-counting oracle on the split bundle upstairs.
        #[arg(long)]
        cross_check: bool,
    },
    /// Re-derives a certificate and compares it field by field.
    Verify {
        #[arg(long)]
        certificate: String,
        #[arg(long)]
        input: String,
        #[arg(long)]
        cover: String,
    },
}

struct Session<'a> {
    format: Format,
    stdin: &'a mut dyn Read,
    stdin_text: Option<String>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

/// Runs one command line. `args` includes the program name.
pub fn run_command<I, T>(
    args: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return EXIT_INVALID;
        }
        Err(e) => {
            // --help and --version
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let mut session = Session {
        format: cli.format,
        stdin,
        stdin_text: None,
        out,
        err,
    };
    match session.dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(session.err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Verification) => EXIT_VERIFY_FAILED,
    }
}

impl Session<'_> {
    fn dispatch(&mut self, command: Command) -> Outcome {
        match command {
            Command::Hn { input } => {
                let b = self.bundle(&input)?;
                let hn = b.hn();
                self.emit(&HnReport::new(&hn), hn)
            }
            Command::Lambda { input, r } => {
                let b = self.bundle(&input)?;
                let lambda = b.lambda(r)?;
                self.emit(
                    &LambdaReport {
                        r,
                        lambda: lambda.clone(),
                    },
                    lambda,
                )
            }
            Command::Cone { input, r } => {
                let b = self.bundle(&input)?;
                let cone = pseff_cone(&b, r)?;
                let report = ConeReport::new(r, b.lambda(r)?, &cone);
                let text = format!("{}\n{}", cone.ray_a(), cone.ray_b());
                self.emit(&report, text)
            }
            Command::Frobenius { input, j } => {
                let (e, p) = self.split(&input)?;
                if p == 0 {
                    return Err(Error::Validation {
                        field: "characteristic".into(),
                        reason: "Frobenius pullback needs a prime characteristic".into(),
                    }
                    .into());
                }
                let pulled = frobenius_split(&e, p, j)?;
                self.emit_document(BundleDescriptor::split(pulled, p)?)
            }
            Command::Shift { input, j } => {
                let d = self.strong(&input)?;
                self.emit_document(BundleDescriptor::Strong(shift_strong(&d, j)))
            }
            Command::Dual { input } => {
                let (e, p) = self.split(&input)?;
                self.emit_document(BundleDescriptor::split(dual_split(&e), p)?)
            }
            Command::Wedge { input, r } => {
                let (e, _) = self.split(&input)?;
                let exponents = exterior_power_split(e.exponents(), r)?;
                let text = format!(
                    "({})",
                    exponents
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                );
                self.emit(&WedgeReport { r, exponents }, text)
            }
            Command::Oracle { input, r } => {
                let (e, _) = self.split(&input)?;
                let report = verify_theorem_split(&e, r)?;
                let text = table(&[
                    ("r", &report.r),
                    ("lambda_formula", &report.lambda_formula),
                    ("lambda_oracle", &report.lambda_oracle),
                    ("h0_at_boundary", &report.h0_at_boundary),
                    ("h0_beyond_boundary", &report.h0_beyond_boundary),
                    ("verdict", &report.verdict),
                ]);
                self.emit(&report, text)?;
                if report.verdict {
                    Ok(())
                } else {
                    Err(Failure::Verification)
                }
            }
            Command::Certify {
                input,
                cover,
                r,
                cross_check: run_cross_check,
            } => {
                let d = self.strong(&input)?;
                let cm = self.cover(&cover)?;
                let cert = build_certificate(&d, &cm, r)?;
                let mut text = certificate_table(&cert);
                let mut agrees = true;
                if run_cross_check {
                    let cc = cross_check(&cm, &cert)?;
                    agrees = cc.agrees;
                    let line = format!(
                        "cross_check           {} (upstairs lambda {}, h0 {} / {})",
                        cc.agrees,
                        cc.report.lambda_oracle,
                        cc.report.h0_at_boundary,
                        cc.report.h0_beyond_boundary
                    );
                    match self.format {
                        Format::Text => text = format!("{text}\n{line}"),
                        Format::Json => writeln!(self.err, "{line}")?,
                    }
                }
                self.emit(&cert, text)?;
                if cert.checks.all() && agrees {
                    Ok(())
                } else {
                    Err(Failure::Verification)
                }
            }
            Command::Verify {
                certificate,
                input,
                cover,
            } => {
                let cert_text = self.read(&certificate)?;
                let cert: EffectivityCertificate = serde_json::from_str(&cert_text)
                    .map_err(|e| Failure::Invalid(format!("certificate: {e}")))?;
                let d = self.strong(&input)?;
                let cm = self.cover(&cover)?;
                let valid = verify_certificate(&cert, &d, &cm);
                #[derive(Serialize)]
                struct Verdict {
                    valid: bool,
                }
                self.emit(&Verdict { valid }, if valid { "valid" } else { "invalid" })?;
                if valid {
                    Ok(())
                } else {
                    Err(Failure::Verification)
                }
            }
        }
    }

    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_text.is_none() {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                self.stdin_text = Some(s);
            }
            return Ok(self.stdin_text.clone().unwrap_or_default());
        }
        std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{path}: {e}")))
    }

    fn document(&mut self, path: &str) -> Result<InputDocument, Failure> {
        let text = self.read(path)?;
        parse_input(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", display_path(path))))
    }

    fn bundle(&mut self, path: &str) -> Result<BundleDescriptor, Failure> {
        match self.document(path)? {
            InputDocument::Bundle(b) => Ok(b),
            InputDocument::Cover(_) => Err(wrong_kind(path, "a bundle", "cover")),
        }
    }

    fn split(&mut self, path: &str) -> Result<(SplitBundle, u64), Failure> {
        match self.bundle(path)? {
            BundleDescriptor::Split {
                bundle,
                characteristic,
            } => Ok((bundle, characteristic)),
            other => Err(wrong_kind(
                path,
                "split",
                InputDocument::Bundle(other).kind(),
            )),
        }
    }

    fn strong(&mut self, path: &str) -> Result<StrongHnData, Failure> {
        let b = self.bundle(path)?;
        b.to_strong().ok_or_else(|| {
            Failure::Invalid(format!(
                "{path}: invalid characteristic: certificates need a prime characteristic"
            ))
        })
    }

    fn cover(&mut self, path: &str) -> Result<CoverModel, Failure> {
        match self.document(path)? {
            InputDocument::Cover(cm) => Ok(cm),
            other => Err(wrong_kind(path, "cover", other.kind())),
        }
    }

    fn emit<T: Serialize>(&mut self, value: &T, text: impl Display) -> Outcome {
        match self.format {
            Format::Text => writeln!(self.out, "{text}")?,
            Format::Json => {
                let json = serde_json::to_string_pretty(value)
                    .map_err(|e| Failure::Invalid(format!("serialization: {e}")))?;
                writeln!(self.out, "{json}")?
            }
        }
        Ok(())
    }

    fn emit_document(&mut self, b: BundleDescriptor) -> Outcome {
        let text = match &b {
            BundleDescriptor::Split {
                bundle,
                characteristic,
            } => format!("{bundle} char {characteristic}"),
            BundleDescriptor::Strong(d) => {
                format!("p={} delta={} {}", d.characteristic(), d.delta(), d.hn())
            }
            BundleDescriptor::CharZero(hn) => hn.to_string(),
        };
        let value = InputDocument::Bundle(b).to_value();
        self.emit(&value, text)
    }
}

fn display_path(path: &str) -> &str {
    if path == "-" {
        "<stdin>"
    } else {
        path
    }
}

fn wrong_kind(path: &str, expected: &str, got: &str) -> Failure {
    Failure::Invalid(format!(
        "{path}: invalid kind: expected a {expected} document, got `{got}`"
    ))
}

fn table(rows: &[(&str, &dyn Display)]) -> String {
    rows.iter()
        .map(|(k, v)| format!("{k:<22}{v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn certificate_table(c: &EffectivityCertificate) -> String {
    let selected = format!(
        "({})",
        c.selected_exponents
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    table(&[
        ("r", &c.r),
        ("ell", &c.ell),
        ("n", &c.n),
        ("selected_exponents", &selected),
        ("tilde_l_degree", &c.tilde_l_degree),
        ("total_map_degree", &c.total_map_degree),
        ("summand_ok", &c.checks.summand_ok),
        ("degree_identity_ok", &c.checks.degree_identity_ok),
        ("pullback_identity_ok", &c.checks.pullback_identity_ok),
    ])
}
