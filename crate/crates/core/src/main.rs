use std::io::IsTerminal;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zsinv::action::build_module;
use zsinv::invariants::{EngineBudget, InvariantEngine};
use zsinv::verify::{run_suite, VerificationReport};
use zsinv::zerosum::{
    cd_check, classify_maximal_zsf, davenport_k_search, davenport_search, factor_k, find_short_zero_sum,
    max_factorization, nullak_factor, separ_factor, Factorization, SearchBudget,
};
use zsinv::{parse, AbelianGroup, Sequence};

#[derive(Parser)]
#[command(name = "zsinv", version, about = "Zero-sum constants and Noether numbers by exact computation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Davenport constant D(A) by exhaustive search.
    Davenport(GroupArgs),
    /// k-th Davenport constant D_k(A).
    DavenportK {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        k: u32,
    },
    /// Factor a sequence into zero-sum parts: maximal, or exactly k parts with -k.
    Factor {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(short)]
        k: Option<u32>,
    },
    /// Constructive zero-sum lemmas on a given input.
    Lemma {
        #[arg(value_enum)]
        which: Lemma,
        #[command(flatten)]
        seq: SeqArgs,
        /// Sequence T to keep clear of the first two factors (separ).
        #[arg(long, default_value = "")]
        avoid: String,
        #[arg(short, default_value_t = 2)]
        k: u32,
    },
    /// Noether number beta(G, V), swept up to --dmax.
    Noether(ModuleArgs),
    /// k-th Noether number beta_k(G, V).
    NoetherK {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(short)]
        k: u32,
    },
    /// Top degree b(G, V) of the coinvariant algebra.
    HilbertTop(ModuleArgs),
    /// Run one named family of invariant-theory checks.
    Check {
        #[arg(value_enum)]
        which: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the verification suite.
    Verify {
        /// Regular expression matched against whole check ids.
        #[arg(long)]
        filter: Option<String>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Cyclic factor orders, e.g. "3,3".
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = SearchBudget::default().max_group_size)]
    max_group_size: usize,
}

impl GroupArgs {
    fn parse(&self) -> Result<(AbelianGroup, SearchBudget), String> {
        let g = parse::group(&self.group).map_err(|e| e.to_string())?;
        Ok((g, SearchBudget { max_group_size: self.max_group_size, ..SearchBudget::default() }))
    }
}

#[derive(Args)]
struct SeqArgs {
    #[arg(long)]
    group: String,
    /// Elements with multiplicities, e.g. "(1,0)^2 (0,1)".
    #[arg(long, default_value = "")]
    seq: String,
}

impl SeqArgs {
    fn parse(&self) -> Result<(AbelianGroup, Sequence), String> {
        let g = parse::group(&self.group).map_err(|e| e.to_string())?;
        let s = parse::sequence(&g, &self.seq).map_err(|e| e.to_string())?;
        Ok((g, s))
    }
}

#[derive(Args)]
struct ModuleArgs {
    /// Module spec, e.g. "p=3;V=[1:1]" or "p=3;r=2;X=all".
    #[arg(long)]
    module: String,
    #[arg(long)]
    dmax: u32,
    #[arg(long, default_value_t = zsinv::action::DEFAULT_GROUP_BUDGET)]
    max_group: usize,
    #[arg(long, default_value_t = EngineBudget::default().max_monomials)]
    max_monomials: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    Cd,
    Eta,
    Zsf,
    Nullak,
    Separ,
    Hk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Polar,
    Trukk,
    B1,
    Reduction,
    H3,
}

impl Family {
    fn filter(self) -> &'static str {
        match self {
            Family::Polar => "noether\\.polar",
            Family::Trukk => "property\\.trukk",
            Family::B1 => "property\\.b1",
            Family::Reduction => "noether\\.reduction",
            Family::H3 => "noether\\.(h3|obstruction)",
        }
    }
}

fn factorization_json(f: &Factorization) -> Value {
    json!({
        "factors": f.factors.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "remainder": f.remainder.to_string(),
    })
}

fn with_time(mut v: Value, start: Instant) -> Value {
    v["elapsed_ms"] = json!(start.elapsed().as_millis());
    v
}

fn run(command: Command) -> Result<(Value, bool), String> {
    let start = Instant::now();
    let e = |e: &dyn std::fmt::Display| e.to_string();
    let out = match command {
        Command::Davenport(args) => {
            let (g, budget) = args.parse()?;
            let r = davenport_search(&g, &budget).map_err(|x| e(&x))?;
            json!({"input": {"group": g.to_string()}, "result": r.value, "witness": r.witness.to_string()})
        }
        Command::DavenportK { group, k } => {
            let (g, budget) = group.parse()?;
            let r = davenport_k_search(&g, k, &budget).map_err(|x| e(&x))?;
            json!({"input": {"group": g.to_string(), "k": k}, "result": r.value, "witness": r.zero_sum_witness().to_string()})
        }
        Command::Factor { seq, k } => {
            let (_, s) = seq.parse()?;
            let f = match k {
                Some(k) => factor_k(&s, k).map_err(|x| e(&x))?,
                None => max_factorization(&s),
            };
            json!({"input": {"seq": s.to_string(), "k": k}, "result": f.len(), "witness": factorization_json(&f)})
        }
        Command::Lemma { which, seq, avoid, k } => {
            let (g, s) = seq.parse()?;
            let input = json!({"group": g.to_string(), "seq": s.to_string()});
            match which {
                Lemma::Cd => {
                    let r = cd_check(&s).map_err(|x| e(&x))?;
                    json!({"input": input, "result": r, "witness": s.partial_sums().iter().map(|x| x.to_string()).collect::<Vec<_>>()})
                }
                Lemma::Eta => {
                    let x = find_short_zero_sum(&s).map_err(|x| e(&x))?;
                    json!({"input": input, "result": x.len(), "witness": x.to_string()})
                }
                Lemma::Zsf => {
                    let p = match g.orders() {
                        [p] => *p,
                        _ => return Err(format!("zsf needs a cyclic group, got {g}")),
                    };
                    let all = classify_maximal_zsf(p, &SearchBudget::default()).map_err(|x| e(&x))?;
                    let list: Vec<String> = all.iter().map(|s| s.to_string()).collect();
                    json!({"input": {"group": g.to_string()}, "result": list.len(), "witness": list})
                }
                Lemma::Nullak => {
                    let f = nullak_factor(&s).map_err(|x| e(&x))?;
                    json!({"input": input, "result": f.len(), "witness": factorization_json(&f)})
                }
                Lemma::Separ => {
                    let t = parse::sequence(&g, &avoid).map_err(|x| e(&x))?;
                    let p = g.exponent();
                    let f = separ_factor(&s, &t, p).map_err(|x| e(&x))?;
                    json!({
                        "input": {"group": g.to_string(), "seq": s.to_string(), "avoid": t.to_string()},
                        "result": f.factorization.len(),
                        "witness": factorization_json(&f.factorization),
                        "split_case": f.split_case,
                    })
                }
                Lemma::Hk => {
                    let d = davenport_k_search(&g, k, &SearchBudget::default()).map_err(|x| e(&x))?.value;
                    if (s.len() as u32) < d {
                        return Err(format!("|S| = {} is below D_{k}({g}) = {d}", s.len()));
                    }
                    let f = factor_k(&s, k).map_err(|x| e(&x))?;
                    json!({"input": {"seq": s.to_string(), "k": k, "davenport_k": d}, "result": f.len(), "witness": factorization_json(&f)})
                }
            }
        }
        Command::Noether(args) => noether(&args, 1)?,
        Command::NoetherK { module, k } => noether(&module, k)?,
        Command::HilbertTop(args) => {
            let m = build_module(&parse::module(&args.module).map_err(|x| e(&x))?, args.max_group).map_err(|x| e(&x))?;
            let engine = InvariantEngine::with_budget(&m, EngineBudget { max_monomials: args.max_monomials });
            let r = engine.top_degree_coinvariants(args.dmax).map_err(|x| e(&x))?;
            serde_json::to_value(r).map_err(|x| e(&x))?
        }
        Command::Check { which, seed } => return suite(Some(which.filter()), 0, seed),
        Command::Verify { filter, jobs, seed } => return suite(filter.as_deref(), jobs, seed),
    };
    Ok((with_time(out, start), true))
}

fn noether(args: &ModuleArgs, k: u32) -> Result<Value, String> {
    let descriptor = parse::module(&args.module).map_err(|e| e.to_string())?;
    let m = build_module(&descriptor, args.max_group).map_err(|e| e.to_string())?;
    let engine = InvariantEngine::with_budget(&m, EngineBudget { max_monomials: args.max_monomials });
    let r = engine.noether_k(k, args.dmax).map_err(|e| e.to_string())?;
    if std::io::stderr().is_terminal() {
        eprintln!("{:>4} {:>8} {:>10} {:>6}", "d", "dim_inv", "products", "gap");
        for row in &r.degrees {
            eprintln!("{:>4} {:>8} {:>10} {:>6}", row.d, row.dim_inv, row.dim_products, row.gap);
        }
    }
    serde_json::to_value(r).map_err(|e| e.to_string())
}

fn suite(filter: Option<&str>, jobs: usize, seed: u64) -> Result<(Value, bool), String> {
    let report: VerificationReport = run_suite(filter, jobs, seed).map_err(|e| e.to_string())?;
    if std::io::stderr().is_terminal() {
        for r in &report.records {
            eprintln!("{} {:<24} {:>8} ms  {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.elapsed_ms, r.computed);
        }
    }
    let pass = report.summary.pass;
    Ok((serde_json::to_value(report).map_err(|e| e.to_string())?, pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, pass)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
