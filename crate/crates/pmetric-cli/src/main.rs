//! Command-line front end. Exit codes: 0 verdict-true/success, 1
//! verdict-false (a legitimate negative answer), 2 usage or parse error,
//! 3 axiom violation in an input space.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pmetric::completion::{
    complete, extend_embedding, refute_isometric_extension, zero_completion, BaseEmbedding,
    CauchySeqModel, ClassId, PresentedSpace, RefutationOutcome, TargetPoint,
    TargetSpace,
};
use pmetric::extension::attach_with_offset;
use pmetric::isometry::{find_isometry, IsometryMode};
use pmetric::kahn::{
    asymmetry_certificate, density_witness, kahn_distance_exact, kahn_incompleteness_witness,
    kahn_pmetric, truncate, Alphabet, DensityOutcome, KahnDistance, KahnError, KahnPoint,
    WordSubset,
};
use pmetric::pms::{emit_pms, parse_pms, parse_seq_literal};
use pmetric::rational::{fmt_rat, parse_rat, rat_int, Rat};
use pmetric::report::Report;
use pmetric::repro::run_repro;
use pmetric::search::{
    classify_completions, enumerate_pmetrics, random_pmetric, search_counterexample,
    GeneratorParams, SearchBounds, SearchProperty, SearchStatus,
};
use pmetric::seq::classify;
use pmetric::space::{
    is_dense, is_dense_at, is_symmetrically_dense, is_symmetrically_dense_at, open_ball,
    FinitePMetricSpace, PointSet,
};

const EXIT_TRUE: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_AXIOMS: u8 = 3;

#[derive(Parser)]
#[command(name = "pmetric", version, about = "Exact partial metric space toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a space; exit 0 on pass, 3 on violation.
    Check { space: String },
    /// List the members of an open ball.
    Ball {
        space: String,
        #[arg(long)]
        center: String,
        #[arg(long)]
        epsilon: String,
    },
    /// Is the subset dense? Exact criterion, or one radius with --epsilon.
    Dense {
        space: String,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Is the subset symmetrically dense?
    Symdense {
        space: String,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Classify an eventually periodic sequence, literal `prefix;cycle`.
    Seq {
        space: String,
        #[arg(long)]
        seq: String,
    },
    /// Attach an asymmetric point; emits the extended space as .pms.
    Extend {
        space: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        offset: Option<String>,
    },
    /// Completion of a finite space, or one class of the Kahn-word completion.
    Complete(CompletionArgs),
    /// 0-completion; membership of the given class.
    ZeroComplete(CompletionArgs),
    /// Find an isometry between two spaces; exit 1 if none exists.
    Isometry {
        source: String,
        target: String,
        #[arg(long)]
        embedding: bool,
    },
    /// Extend a base embedding through the completion and verify it.
    ExtendEmbedding {
        /// Base space (.pms), or omit with --kahn-words.
        space: Option<String>,
        #[arg(long)]
        kahn_words: Option<String>,
        /// Comma-separated target indices for each base point (finite case).
        #[arg(long)]
        map: Option<String>,
        /// Target space (.pms) for the finite case.
        #[arg(long)]
        target: Option<String>,
        /// Stream to test in the Kahn case, e.g. repeat:0.
        #[arg(long)]
        stream: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Search the target for a point realising an extra point's distances.
    RefuteExtension {
        /// Target space (.pms); or use --kahn-full / --kahn-minus-empty.
        target: Option<String>,
        #[arg(long)]
        kahn_full: Option<String>,
        #[arg(long)]
        kahn_minus_empty: Option<String>,
        /// Embedded points: labels (finite) or words (Kahn), comma-separated.
        #[arg(long)]
        embedded: String,
        /// Required distances from the extra point, comma-separated.
        #[arg(long)]
        distances: String,
        #[arg(long)]
        self_distance: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Kahn domain tools.
    #[command(subcommand)]
    Kahn(KahnCommand),
    /// Generate a random valid space; deterministic per seed.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Counterexample search; exit 1 if a witness turns up.
    Search {
        #[arg(long)]
        property: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        grid: String,
    },
    /// Enumerate completions of a space over a grid, one extra point.
    Completions {
        space: String,
        #[arg(long)]
        grid: String,
    },
    /// Replay the whole fixture suite; exit 1 on any regression.
    Repro,
}

#[derive(Args)]
struct CompletionArgs {
    /// Finite space (.pms); or use --kahn-words.
    space: Option<String>,
    #[arg(long)]
    kahn_words: Option<String>,
    /// Point of the completion: a word, `repeat:<w>`, or `program:<id>`.
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
}

#[derive(Subcommand)]
enum KahnCommand {
    /// Exact distance between two points when decidable.
    Dist {
        x: String,
        y: String,
        #[arg(long, default_value = "01")]
        alphabet: String,
        /// Fallback scan precision for the certified interval.
        #[arg(long, default_value_t = 64)]
        precision: usize,
    },
    /// Emit the depth-d truncation as .pms.
    Truncate {
        #[arg(long, default_value = "01")]
        alphabet: String,
        #[arg(long)]
        depth: usize,
    },
    /// Density witness for a point at a radius; exit 1 on asymmetry.
    Witness {
        #[arg(long, default_value = "01")]
        alphabet: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        epsilon: String,
        /// Use the words-minus-empty subset instead of all words.
        #[arg(long)]
        nonempty: bool,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// The incompleteness witness: a 0-Cauchy word sequence with no word limit.
    Incomplete {
        #[arg(long, default_value = "01")]
        alphabet: String,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn read_space(path: &str) -> Result<FinitePMetricSpace, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?
    };
    parse_pms(&text).map_err(|e| usage(format!("{path}: {e}")))
}

/// Parses and additionally requires the axioms, exit code 3 otherwise.
fn read_valid_space(path: &str) -> Result<FinitePMetricSpace, Failure> {
    let space = read_space(path)?;
    let report = space.check_axioms();
    if report.passed() {
        Ok(space)
    } else {
        Err(Failure {
            code: EXIT_AXIOMS,
            message: format!(
                "{path}: input violates axioms {:?}",
                report.violated_axioms()
            ),
        })
    }
}

fn parse_epsilon(text: &str) -> Result<Rat, Failure> {
    parse_rat(text).map_err(|e| usage(format!("epsilon: {e}")))
}

fn resolve_point(space: &FinitePMetricSpace, label: &str) -> Result<usize, Failure> {
    space
        .index_of(label)
        .ok_or_else(|| usage(format!("unknown point label `{label}`")))
}

fn resolve_subset(space: &FinitePMetricSpace, csv: &str) -> Result<PointSet, Failure> {
    let mut points = Vec::new();
    if !csv.trim().is_empty() {
        for label in csv.split(',') {
            points.push(resolve_point(space, label.trim())?);
        }
    }
    PointSet::new(points, space.len()).map_err(|e| usage(e.to_string()))
}

fn parse_grid(csv: &str) -> Result<Vec<Rat>, Failure> {
    csv.split(',')
        .map(|t| parse_rat(t.trim()).map_err(|e| usage(format!("grid: {e}"))))
        .collect()
}

fn parse_alphabet(symbols: &str) -> Result<Alphabet, Failure> {
    Alphabet::from_str_symbols(symbols).map_err(|e| usage(e.to_string()))
}

fn parse_kahn_point(text: &str, alphabet: &Alphabet) -> Result<KahnPoint, Failure> {
    KahnPoint::parse(text, alphabet).map_err(|e| usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Check { space } => cmd_check(&space),
        Command::Ball {
            space,
            center,
            epsilon,
        } => cmd_ball(&space, &center, &epsilon),
        Command::Dense {
            space,
            subset,
            epsilon,
        } => cmd_density(&space, &subset, epsilon.as_deref(), false),
        Command::Symdense {
            space,
            subset,
            epsilon,
        } => cmd_density(&space, &subset, epsilon.as_deref(), true),
        Command::Seq { space, seq } => cmd_seq(&space, &seq),
        Command::Extend {
            space,
            base,
            offset,
        } => cmd_extend(&space, base.as_deref(), offset.as_deref()),
        Command::Complete(args) => cmd_complete(args, false),
        Command::ZeroComplete(args) => cmd_complete(args, true),
        Command::Isometry {
            source,
            target,
            embedding,
        } => cmd_isometry(&source, &target, embedding),
        Command::ExtendEmbedding {
            space,
            kahn_words,
            map,
            target,
            stream,
            depth,
        } => cmd_extend_embedding(space, kahn_words, map, target, stream, depth),
        Command::RefuteExtension {
            target,
            kahn_full,
            kahn_minus_empty,
            embedded,
            distances,
            self_distance,
            depth,
        } => cmd_refute(
            target,
            kahn_full,
            kahn_minus_empty,
            &embedded,
            &distances,
            &self_distance,
            depth,
        ),
        Command::Kahn(k) => cmd_kahn(k),
        Command::Gen { n, seed } => cmd_gen(n, seed),
        Command::Search {
            property,
            max_n,
            grid,
        } => cmd_search(&property, max_n, &grid),
        Command::Completions { space, grid } => cmd_completions(&space, &grid),
        Command::Repro => cmd_repro(),
    }
}

fn cmd_check(path: &str) -> Result<u8, Failure> {
    let space = read_space(path)?;
    let mut report = Report::new("check");
    report.embed_space("space", &space);
    let axioms = space.check_axioms();
    report.push_bool("valid", axioms.passed());
    for (i, v) in axioms.violations.iter().enumerate() {
        report.push(
            &format!("violation.{i}"),
            format!(
                "{:?} at {:?}: {} vs {}",
                v.axiom,
                v.indices,
                fmt_rat(&v.lhs),
                fmt_rat(&v.rhs)
            ),
        );
    }
    print!("{}", report.render());
    Ok(if axioms.passed() { EXIT_TRUE } else { EXIT_AXIOMS })
}

fn cmd_ball(path: &str, center: &str, epsilon: &str) -> Result<u8, Failure> {
    let space = read_valid_space(path)?;
    let c = resolve_point(&space, center)?;
    let eps = parse_epsilon(epsilon)?;
    let ball = open_ball(&space, c, &eps).map_err(|e| usage(e.to_string()))?;
    let mut report = Report::new("ball");
    report.embed_space("space", &space);
    report.push("center", center);
    report.push_rat("epsilon", &eps);
    let labels: Vec<&str> = ball.iter().map(|i| space.label(i)).collect();
    report.push("members", labels.join(" "));
    print!("{}", report.render());
    Ok(EXIT_TRUE)
}

fn cmd_density(
    path: &str,
    subset: &str,
    epsilon: Option<&str>,
    symmetric: bool,
) -> Result<u8, Failure> {
    let space = read_valid_space(path)?;
    let set = resolve_subset(&space, subset)?;
    let mut report = Report::new(if symmetric { "symdense" } else { "dense" });
    report.embed_space("space", &space);
    report.push("subset", subset);
    let verdict = match epsilon {
        Some(e) => {
            let eps = parse_epsilon(e)?;
            report.push_rat("epsilon", &eps);
            if symmetric {
                is_symmetrically_dense_at(&space, &set, &eps)
            } else {
                is_dense_at(&space, &set, &eps)
            }
        }
        None => {
            let r = if symmetric {
                is_symmetrically_dense(&space, &set)
            } else {
                is_dense(&space, &set)
            };
            if let Some(x) = r.failing {
                report.push("counterwitness", space.label(x));
            }
            r.dense
        }
    };
    report.push_bool("verdict", verdict);
    print!("{}", report.render());
    Ok(if verdict { EXIT_TRUE } else { EXIT_FALSE })
}

fn cmd_seq(path: &str, literal: &str) -> Result<u8, Failure> {
    let space = read_valid_space(path)?;
    let seq = parse_seq_literal(literal, &space).map_err(|e| usage(e.to_string()))?;
    let c = classify(&space, &seq);
    let mut report = Report::new("seq");
    report.embed_space("space", &space);
    report.push("seq", literal);
    report.push_bool("p-cauchy", c.p_cauchy);
    if let Some(l) = &c.p_cauchy_limit {
        report.push_rat("p-cauchy-limit", l);
    }
    report.push_bool("0-cauchy", c.zero_cauchy);
    let names = |s: &PointSet| {
        s.iter()
            .map(|i| space.label(i).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    report.push("p-limits", names(&c.p_limits));
    report.push("0-limits", names(&c.zero_limits));
    report.push("top-limits", names(&c.top_limits));
    print!("{}", report.render());
    Ok(EXIT_TRUE)
}

fn cmd_extend(path: &str, base: Option<&str>, offset: Option<&str>) -> Result<u8, Failure> {
    let space = read_valid_space(path)?;
    let base_idx = match base {
        Some(l) => resolve_point(&space, l)?,
        None => 0,
    };
    let off = match offset {
        Some(o) => parse_rat(o).map_err(|e| usage(format!("offset: {e}")))?,
        None => rat_int(1),
    };
    let ext = attach_with_offset(&space, base_idx, &off).map_err(|e| usage(e.to_string()))?;
    let mut report = Report::new("extend");
    report.push("base", space.label(base_idx));
    report.push_rat("offset", &off);
    report.push("new-point", ext.space.label(ext.new_point));
    let old = PointSet::new((0..space.len()).collect(), ext.space.len())
        .map_err(|e| usage(e.to_string()))?;
    report.push_bool("old-points-dense", is_dense(&ext.space, &old).dense);
    report.push_bool(
        "old-points-symmetrically-dense",
        is_symmetrically_dense(&ext.space, &old).dense,
    );
    eprint!("{}", report.render());
    print!("{}", emit_pms(&ext.space));
    Ok(EXIT_TRUE)
}

fn completion_presentation(args: &CompletionArgs) -> Result<PresentedSpace, Failure> {
    match (&args.space, &args.kahn_words) {
        (Some(path), None) => Ok(PresentedSpace::Finite(read_valid_space(path)?)),
        (None, Some(symbols)) => Ok(PresentedSpace::KahnFiniteWords(parse_alphabet(symbols)?)),
        _ => Err(usage("provide either a space file or --kahn-words")),
    }
}

fn kahn_class_of(
    completion: &pmetric::completion::CompletionSpace,
    alphabet: &Alphabet,
    point: &str,
) -> Result<ClassId, Failure> {
    let p = parse_kahn_point(point, alphabet)?;
    completion
        .class_of(&CauchySeqModel::kahn_canonical(p))
        .map_err(|e| usage(e.to_string()))
}

fn cmd_complete(args: CompletionArgs, zero: bool) -> Result<u8, Failure> {
    let presented = completion_presentation(&args)?;
    let mut report = Report::new(if zero { "zero-complete" } else { "complete" });
    match &presented {
        PresentedSpace::Finite(space) => {
            report.embed_space("space", space);
            if zero {
                let zc = zero_completion(&presented).map_err(|e| usage(e.to_string()))?;
                report.push_bool("collapses-to-base", zc.collapses_to_base());
                let all_member = (0..zc.completion().num_classes())
                    .all(|i| zc.is_member(ClassId(i)));
                report.push_bool("all-classes-member", all_member);
            } else {
                let completion = complete(&presented).map_err(|e| usage(e.to_string()))?;
                report.push("classes", completion.num_classes());
                let (_, witness) = completion
                    .to_finite()
                    .map_err(|e| usage(e.to_string()))?;
                let mapping: Vec<String> =
                    witness.mapping.iter().map(|i| i.to_string()).collect();
                report.push("isometric-to-base", mapping.join(" "));
            }
            print!("{}", report.render());
            Ok(EXIT_TRUE)
        }
        PresentedSpace::KahnFiniteWords(alphabet) => {
            let point = args
                .point
                .as_deref()
                .ok_or_else(|| usage("--point is required with --kahn-words"))?;
            report.push("point", point);
            if zero {
                let zc = zero_completion(&presented).map_err(|e| usage(e.to_string()))?;
                let id = kahn_class_of(zc.completion(), alphabet, point)?;
                let class = zc.completion().class(id);
                report.push_rat("self-distance", &class.self_distance);
                let member = zc.is_member(id);
                report.push_bool("member", member);
                print!("{}", report.render());
                Ok(if member { EXIT_TRUE } else { EXIT_FALSE })
            } else {
                let completion = complete(&presented).map_err(|e| usage(e.to_string()))?;
                let id = kahn_class_of(&completion, alphabet, point)?;
                let class = completion.class(id);
                report.push_rat("self-distance", &class.self_distance);
                report.push("representative", class.representative.describe());
                if let Some(e) = &args.epsilon {
                    let eps = parse_epsilon(e)?;
                    let w = completion
                        .symmetric_density_witness(id, &eps)
                        .map_err(|e| usage(e.to_string()))?;
                    report.push("density-witness", format!("{}", w.base));
                    report.push_bool("density-witness-ok", w.ok());
                }
                print!("{}", report.render());
                Ok(EXIT_TRUE)
            }
        }
        PresentedSpace::KahnFull(_) => Err(usage("full Kahn presentations are not completable")),
    }
}

fn cmd_isometry(source: &str, target: &str, embedding: bool) -> Result<u8, Failure> {
    let src = read_valid_space(source)?;
    let dst = read_valid_space(target)?;
    let mode = if embedding {
        IsometryMode::Embedding
    } else {
        IsometryMode::Bijection
    };
    let mut report = Report::new("isometry");
    report.push("mode", format!("{mode:?}"));
    match find_isometry(&src, &dst, mode) {
        Some(w) => {
            let pairs: Vec<String> = w
                .mapping
                .iter()
                .enumerate()
                .map(|(i, &j)| format!("{}->{}", src.label(i), dst.label(j)))
                .collect();
            report.push("mapping", pairs.join(" "));
            report.push_bool("found", true);
            print!("{}", report.render());
            Ok(EXIT_TRUE)
        }
        None => {
            report.push_bool("found", false);
            print!("{}", report.render());
            Ok(EXIT_FALSE)
        }
    }
}

fn cmd_extend_embedding(
    space: Option<String>,
    kahn_words: Option<String>,
    map: Option<String>,
    target: Option<String>,
    stream: Option<String>,
    depth: usize,
) -> Result<u8, Failure> {
    let mut report = Report::new("extend-embedding");
    let check = match (&space, &kahn_words) {
        (Some(path), None) => {
            let base = read_valid_space(path)?;
            let target_path = target.ok_or_else(|| usage("--target is required"))?;
            let target_space = read_valid_space(&target_path)?;
            let map_csv = map.ok_or_else(|| usage("--map is required"))?;
            let mapping: Vec<usize> = map_csv
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| usage("bad --map index")))
                .collect::<Result<_, _>>()?;
            let completion = complete(&PresentedSpace::Finite(base))
                .map_err(|e| usage(e.to_string()))?;
            let tested: Vec<ClassId> = (0..completion.num_classes()).map(ClassId).collect();
            extend_embedding(
                &completion,
                &BaseEmbedding::FiniteMap(mapping),
                &TargetSpace::Finite(target_space),
                &tested,
                depth,
                &[],
            )
            .map_err(|e| usage(e.to_string()))?
        }
        (None, Some(symbols)) => {
            let alphabet = parse_alphabet(symbols)?;
            let spec = stream.ok_or_else(|| usage("--stream is required"))?;
            let point = parse_kahn_point(&spec, &alphabet)?;
            let completion = complete(&PresentedSpace::KahnFiniteWords(alphabet.clone()))
                .map_err(|e| usage(e.to_string()))?;
            let id = completion
                .class_of(&CauchySeqModel::kahn_canonical(point.clone()))
                .map_err(|e| usage(e.to_string()))?;
            extend_embedding(
                &completion,
                &BaseEmbedding::KahnWordIdentity,
                &TargetSpace::KahnFull(alphabet),
                &[id],
                depth,
                &[TargetPoint::Kahn(point)],
            )
            .map_err(|e| usage(e.to_string()))?
        }
        _ => return Err(usage("provide either a space file or --kahn-words")),
    };
    for (id, image) in &check.assignments {
        report.push(&format!("image.{}", id.0), format!("{image}"));
    }
    report.push_bool("isometric", check.isometric);
    report.push_bool("unique", check.unique);
    print!("{}", report.render());
    Ok(if check.isometric && check.unique {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_refute(
    target: Option<String>,
    kahn_full: Option<String>,
    kahn_minus_empty: Option<String>,
    embedded_csv: &str,
    distances_csv: &str,
    self_distance: &str,
    depth: usize,
) -> Result<u8, Failure> {
    let (target_space, embedded): (TargetSpace, Vec<TargetPoint>) =
        match (&target, &kahn_full, &kahn_minus_empty) {
            (Some(path), None, None) => {
                let t = read_valid_space(path)?;
                let pts = embedded_csv
                    .split(',')
                    .map(|l| resolve_point(&t, l.trim()).map(TargetPoint::Index))
                    .collect::<Result<_, _>>()?;
                (TargetSpace::Finite(t), pts)
            }
            (None, Some(symbols), None) | (None, None, Some(symbols)) => {
                let alphabet = parse_alphabet(symbols)?;
                let pts = embedded_csv
                    .split(',')
                    .map(|w| {
                        parse_kahn_point(w.trim(), &alphabet).map(TargetPoint::Kahn)
                    })
                    .collect::<Result<_, _>>()?;
                let t = if kahn_full.is_some() {
                    TargetSpace::KahnFull(alphabet)
                } else {
                    TargetSpace::KahnMinusEmpty(alphabet)
                };
                (t, pts)
            }
            _ => return Err(usage("provide exactly one target")),
        };
    let self_d = parse_rat(self_distance).map_err(|e| usage(format!("self-distance: {e}")))?;
    let dists: Vec<Rat> = distances_csv
        .split(',')
        .map(|t| parse_rat(t.trim()).map_err(|e| usage(format!("distances: {e}"))))
        .collect::<Result<_, _>>()?;
    if dists.len() != embedded.len() {
        return Err(usage("--distances must match --embedded in length"));
    }
    let outcome =
        refute_isometric_extension(&target_space, &embedded, &self_d, &dists, depth, &[])
            .map_err(|e| usage(e.to_string()))?;
    let mut report = Report::new("refute-extension");
    report.push_rat("required-self-distance", &self_d);
    let code = match outcome {
        RefutationOutcome::RefutedGlobally { note, .. } => {
            report.push("status", "refuted-globally");
            report.push("note", note);
            EXIT_TRUE
        }
        RefutationOutcome::CandidateFound { candidate } => {
            report.push("status", "candidate-found");
            // prefer the label when the target carries one
            let shown = match (&target_space, &candidate) {
                (TargetSpace::Finite(s), TargetPoint::Index(i)) => s.label(*i).to_string(),
                _ => format!("{candidate}"),
            };
            report.push("candidate", shown);
            EXIT_FALSE
        }
        RefutationOutcome::Inconclusive { explored } => {
            report.push("status", "inconclusive");
            report.push("explored", explored);
            EXIT_FALSE
        }
    };
    print!("{}", report.render());
    Ok(code)
}

fn cmd_kahn(command: KahnCommand) -> Result<u8, Failure> {
    match command {
        KahnCommand::Dist {
            x,
            y,
            alphabet,
            precision,
        } => {
            let alpha = parse_alphabet(&alphabet)?;
            let px = parse_kahn_point(&x, &alpha)?;
            let py = parse_kahn_point(&y, &alpha)?;
            let mut report = Report::new("kahn dist");
            match kahn_distance_exact(&px, &py) {
                Ok(d) => report.push_rat("distance", &d),
                Err(KahnError::LcpUndecided { .. }) => match kahn_pmetric(&px, &py, precision) {
                    KahnDistance::Exact(d) => report.push_rat("distance", &d),
                    KahnDistance::Bounded { upper } => {
                        report.push("distance-lower", "0");
                        report.push_rat("distance-upper", &upper);
                    }
                },
                Err(e) => return Err(usage(e.to_string())),
            }
            print!("{}", report.render());
            Ok(EXIT_TRUE)
        }
        KahnCommand::Truncate { alphabet, depth } => {
            let alpha = parse_alphabet(&alphabet)?;
            let t = truncate(&alpha, depth).map_err(|e| usage(e.to_string()))?;
            print!("{}", emit_pms(&t));
            Ok(EXIT_TRUE)
        }
        KahnCommand::Witness {
            alphabet,
            point,
            epsilon,
            nonempty,
            max_len: _,
        } => {
            let alpha = parse_alphabet(&alphabet)?;
            let p = parse_kahn_point(&point, &alpha)?;
            let eps = parse_epsilon(&epsilon)?;
            let subset = if nonempty {
                WordSubset::WordsMinusEmpty
            } else {
                WordSubset::AllWords
            };
            let mut report = Report::new("kahn witness");
            report.push_rat("epsilon", &eps);
            match density_witness(&alpha, subset, &p, &eps).map_err(|e| usage(e.to_string()))? {
                DensityOutcome::Witness { word } => {
                    report.push("witness", if word.is_empty() { "ε" } else { &word });
                    print!("{}", report.render());
                    Ok(EXIT_TRUE)
                }
                DensityOutcome::Asymmetry(cert) => {
                    report.push("asymmetry", "true");
                    report.push("words-checked", cert.words_checked);
                    report.push_bool("holds-globally", cert.holds_globally);
                    print!("{}", report.render());
                    Ok(EXIT_FALSE)
                }
            }
        }
        KahnCommand::Incomplete { alphabet, max_len } => {
            let alpha = parse_alphabet(&alphabet)?;
            let w = kahn_incompleteness_witness(&alpha);
            let mut report = Report::new("kahn incomplete");
            report.push_rat("self-distance-limit", &w.self_distance_limit);
            let confirmed = w.no_word_limit(&alpha, max_len);
            report.push_bool("no-word-limit", confirmed);
            // the empty-word asymmetry certificate rides along
            let cert = asymmetry_certificate(&alpha, &pmetric::rational::rat(1, 2), max_len)
                .map_err(|e| usage(e.to_string()))?;
            report.push_bool("empty-word-asymmetry-global", cert.holds_globally);
            print!("{}", report.render());
            Ok(if confirmed { EXIT_TRUE } else { EXIT_FALSE })
        }
    }
}

fn cmd_gen(n: usize, seed: u64) -> Result<u8, Failure> {
    let space =
        random_pmetric(&GeneratorParams::new(n, seed)).map_err(|e| usage(e.to_string()))?;
    print!("{}", emit_pms(&space));
    Ok(EXIT_TRUE)
}

fn parse_property(name: &str) -> Result<SearchProperty, Failure> {
    match name {
        "proper-symmetrically-dense-subset" => Ok(SearchProperty::ProperSymmetricallyDenseSubset),
        "p-cauchy-incomplete" => Ok(SearchProperty::PCauchyIncompleteFinite),
        "single-completion-only" => Ok(SearchProperty::SingleCompletionOnly),
        other => Err(usage(format!(
            "unknown property `{other}`; use proper-symmetrically-dense-subset, \
             p-cauchy-incomplete, or single-completion-only"
        ))),
    }
}

fn cmd_search(property: &str, max_n: usize, grid: &str) -> Result<u8, Failure> {
    let prop = parse_property(property)?;
    let bounds = SearchBounds {
        max_n,
        grid: parse_grid(grid)?,
    };
    let result = search_counterexample(prop, &bounds).map_err(|e| usage(e.to_string()))?;
    let mut report = Report::new("search");
    report.push("property", property);
    report.push("states-explored", result.states_explored);
    match result.status {
        SearchStatus::ExhaustedNoWitness => {
            report.push("status", "exhausted-no-witness");
            print!("{}", report.render());
            Ok(EXIT_TRUE)
        }
        SearchStatus::FoundWitness => {
            let w = result.witness.expect("witness accompanies the status");
            report.push("status", "found-witness");
            report.push("annotation", w.annotation);
            print!("{}", report.render());
            println!();
            print!("{}", emit_pms(&w.space));
            Ok(EXIT_FALSE)
        }
    }
}

fn cmd_completions(path: &str, grid: &str) -> Result<u8, Failure> {
    let space = read_valid_space(path)?;
    let grid = parse_grid(grid)?;
    let found = classify_completions(&space, 1, &grid).map_err(|e| usage(e.to_string()))?;
    // sanity: the enumeration itself must at least cover the grid spaces
    let _ = enumerate_pmetrics(1, &grid).map_err(|e| usage(e.to_string()))?;
    let mut first = true;
    for s in &found {
        if !first {
            println!();
        }
        first = false;
        print!("{}", emit_pms(s));
    }
    eprintln!("completions: {}", found.len());
    Ok(EXIT_TRUE)
}

fn cmd_repro() -> Result<u8, Failure> {
    let outcome = run_repro();
    for check in &outcome.checks {
        println!(
            "{}: {} ({})",
            check.name,
            if check.pass { "pass" } else { "FAIL" },
            check.detail
        );
    }
    Ok(if outcome.all_passed() {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    })
}
