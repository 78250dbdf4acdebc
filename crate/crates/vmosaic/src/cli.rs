//! Command line interface.
//!
//! Results go to the given writer (standard output for the binary); logs
//! and error messages go to standard error. Exit codes: 0 success, 1 domain
//! error (bad input file, invalid mosaic, nothing found), 2 usage error.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use vmosaic_core::braid::{braid_to_mosaic, BraidWord};
use vmosaic_core::catalog::Catalog;
use vmosaic_core::invariants::{f_polynomial, fingerprint, kauffman_bracket};
use vmosaic_core::moves::{compile_rules, eject, inject, Family};
use vmosaic_core::search::{vmn, SweepConfig, VmnOutcome, DEFAULT_BUDGET};
use vmosaic_core::surface::is_nested;
use vmosaic_core::trace::{canonical, trace, GaussCode};
use vmosaic_core::{Fingerprint, VirtualMosaic};

use crate::catalogs;
use crate::corpus::{self, read_mosaic};
use crate::parallel::{sweep_parallel, sweep_tsv};
use crate::svg::render_svg;
use crate::text::print_mosaic;

#[derive(Debug, Parser)]
#[command(name = "vmosaic", version, about = "Virtual knot mosaics")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CatalogArg {
    /// Extra catalog file added to the built-in tables.
    #[arg(long)]
    catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a mosaic file.
    Validate { file: PathBuf },
    /// Print the genus of the mosaic's surface.
    Genus { file: PathBuf },
    /// Print the Gauss code traced from a mosaic.
    Gauss {
        file: PathBuf,
        /// Print the canonical form instead of the traced code.
        #[arg(long)]
        canonical: bool,
    },
    /// Print the bracket, f-polynomial and fingerprint.
    Invariant {
        /// Mosaic file.
        file: Option<PathBuf>,
        /// Gauss code given directly instead of a mosaic.
        #[arg(long, conflicts_with = "file")]
        code: Option<String>,
    },
    /// Name the knot of a mosaic from the catalog. Every matching name is printed.
    Identify {
        file: PathBuf,
        #[command(flatten)]
        catalog: CatalogArg,
    },
    /// Draw a mosaic as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the sites of a move family, or apply the move at one site.
    ApplyMove {
        file: PathBuf,
        #[arg(long)]
        family: String,
        /// Site index from the listing.
        #[arg(long)]
        site: Option<usize>,
    },
    /// Inject (or eject) two rows and two columns at a cell.
    Inject {
        file: PathBuf,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        #[arg(long)]
        eject: bool,
    },
    /// Build a mosaic whose knot is the closure of a virtual braid word.
    FromBraid {
        /// Number of strands.
        #[arg(short = 'k', long)]
        strands: usize,
        /// Letters such as `s1 s2^-1 v1`.
        word: String,
    },
    /// Enumerate all virtual n-mosaics and group them by fingerprint.
    Sweep {
        #[arg(short = 'n')]
        n: usize,
        /// Allowed genus; repeat for several.
        #[arg(long)]
        genus: Vec<usize>,
        #[arg(long)]
        max_crossings: Option<usize>,
        #[arg(long)]
        components: Option<usize>,
        /// Visit one grid per dihedral orbit.
        #[arg(long)]
        symmetry: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the checksum manifest of a corpus directory, or check it.
    Manifest {
        /// Corpus directory; defaults to the shipped corpus.
        #[arg(long)]
        root: Option<PathBuf>,
        #[arg(long)]
        check: bool,
    },
    /// Smallest board size realizing a knot.
    Vmn {
        /// Catalog name, or a mosaic file whose knot is the target.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        catalog: CatalogArg,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn mosaic(path: &Path) -> Result<VirtualMosaic, Failure> {
    read_mosaic(path).map_err(domain)
}

fn catalog(arg: &CatalogArg) -> Result<Catalog, Failure> {
    let mut cat = catalogs::builtin();
    if let Some(path) = &arg.catalog {
        catalogs::extend_from_file(&mut cat, path).map_err(domain)?;
    }
    Ok(cat)
}

fn fp_of(code: &GaussCode) -> Result<Fingerprint, Failure> {
    fingerprint(code, true).map_err(domain)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let w = |out: &mut dyn Write, s: &str| out.write_all(s.as_bytes()).map_err(domain);
    match cli.command {
        Command::Validate { file } => {
            let vm = mosaic(&file)?;
            let nested = is_nested(vm.pairing());
            w(
                out,
                &format!(
                    "ok n={} genus={} crossings={} nested={nested}\n",
                    vm.n(),
                    vm.genus(),
                    vm.grid().crossing_count()
                ),
            )
        }
        Command::Genus { file } => w(out, &format!("{}\n", mosaic(&file)?.genus())),
        Command::Gauss { file, canonical: canon } => {
            let code = trace(&mosaic(&file)?);
            let text = if canon { canonical(&code).0 } else { code.to_string() };
            w(out, &format!("{text}\n"))
        }
        Command::Invariant { file, code } => {
            let code = match (file, code) {
                (Some(f), None) => trace(&mosaic(&f)?),
                (None, Some(c)) => GaussCode::parse(&c).map_err(|e| Failure::Usage(e.to_string()))?,
                _ => return Err(Failure::Usage("give a mosaic file or --code".into())),
            };
            let bracket = kauffman_bracket(&code).map_err(domain)?;
            let f = f_polynomial(&code).map_err(domain)?;
            let fp = fp_of(&code)?;
            w(out, &format!("components: {}\nbracket: {bracket}\nf: {f}\nfingerprint: {fp}\n", code.component_count()))
        }
        Command::Identify { file, catalog: arg } => {
            let cat = catalog(&arg)?;
            let fp = fp_of(&trace(&mosaic(&file)?))?;
            let names = cat.identify(&fp);
            if names.is_empty() {
                return Err(Failure::Domain(format!("no catalog entry has fingerprint {fp}")));
            }
            if names.len() > 1 {
                log::warn!("fingerprint {fp} is shared by {} catalog entries", names.len());
            }
            w(out, &names.iter().map(|n| format!("{n}\n")).collect::<String>())
        }
        Command::Render { file, output } => {
            let svg = render_svg(&mosaic(&file)?);
            match output {
                Some(path) => std::fs::write(&path, svg).map_err(|e| domain(format!("{}: {e}", path.display()))),
                None => w(out, &svg),
            }
        }
        Command::ApplyMove { file, family, site } => {
            let fam = Family::parse(&family).ok_or_else(|| Failure::Usage(format!("unknown move family {family:?}")))?;
            let vm = mosaic(&file)?;
            let table = compile_rules();
            let sites = table.find_sites(&vm, fam);
            match site {
                None => {
                    let mut s = String::new();
                    for (k, site) in sites.iter().enumerate() {
                        let anchors: Vec<String> = site.anchors.iter().map(|(r, c)| format!("({r},{c})")).collect();
                        s.push_str(&format!("{k}\t{fam}\t{}\n", anchors.join(" ")));
                    }
                    log::info!("{} {fam} sites", sites.len());
                    w(out, &s)
                }
                Some(k) => {
                    let site = sites
                        .get(k)
                        .ok_or_else(|| Failure::Usage(format!("site {k} out of range, {} sites", sites.len())))?;
                    let moved = table.apply(&vm, site).map_err(domain)?;
                    w(out, &print_mosaic(&moved))
                }
            }
        }
        Command::Inject { file, row, col, eject: out_of } => {
            let vm = mosaic(&file)?;
            let moved = if out_of { eject(&vm, row, col) } else { inject(&vm, row, col) }.map_err(domain)?;
            w(out, &print_mosaic(&moved))
        }
        Command::FromBraid { strands, word } => {
            let word = BraidWord::parse(strands, &word).map_err(|e| Failure::Usage(e.to_string()))?;
            w(out, &print_mosaic(&braid_to_mosaic(&word)))
        }
        Command::Sweep { n, genus, max_crossings, components, symmetry, workers, budget, output } => {
            let mut config = SweepConfig::new(n);
            if !genus.is_empty() {
                config.genus = Some(genus.into_iter().collect::<BTreeSet<_>>());
            }
            config.max_crossing_tiles = max_crossings;
            config.components = components;
            config.symmetry_reduction = symmetry;
            config.workers = workers.max(1);
            config.budget = budget;
            let started = std::time::Instant::now();
            let result = sweep_parallel(&config).map_err(domain)?;
            log::info!(
                "{} grids, {} mosaics, {} fingerprints in {:.2?}",
                result.grids,
                result.mosaics,
                result.entries.len(),
                started.elapsed()
            );
            let tsv = sweep_tsv(&result);
            match output {
                Some(path) => std::fs::write(&path, tsv).map_err(|e| domain(format!("{}: {e}", path.display()))),
                None => w(out, &tsv),
            }
        }
        Command::Manifest { root, check } => {
            let root = root.unwrap_or_else(corpus::default_root);
            if check {
                let files = corpus::verify(&root).map_err(domain)?;
                w(out, &format!("ok {} files\n", files.len()))
            } else {
                w(out, &corpus::manifest_text(&corpus::scan(&root).map_err(domain)?))
            }
        }
        Command::Vmn { target, nmax, budget, catalog: arg } => {
            let fp = match catalog(&arg)?.get(&target) {
                Some(entry) => entry.fingerprint.clone(),
                None if Path::new(&target).is_file() => fp_of(&trace(&mosaic(Path::new(&target))?))?,
                None => return Err(Failure::Usage(format!("{target:?} is neither a catalog name nor a mosaic file"))),
            };
            match vmn(&fp, nmax, budget).map_err(domain)? {
                VmnOutcome::Found { n, witness, genus } => {
                    log::info!("witness has genus {genus}");
                    w(out, &format!("{n}\n{}", print_mosaic(&witness)))
                }
                VmnOutcome::NotFoundUpTo { n_max, pruned } => {
                    let mut msg = format!("not found for n <= {n_max}");
                    if !pruned.is_empty() {
                        let sizes: Vec<String> = pruned.iter().map(|n| n.to_string()).collect();
                        msg.push_str(&format!(" (sizes {} searched at genus 0 only)", sizes.join(", ")));
                    }
                    Err(Failure::Domain(msg))
                }
            }
        }
    }
}

/// Run the command line `args` (including the program name), writing
/// results to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    }
}
