use std::fs;
use std::time::Instant;

use mzv_core::combinatorics::{
    bell_complete, bell_partial, coeff_c, coeff_c_star, enum_restricted_partitions, enum_set_partitions,
    stirling_first_unsigned, stirling_second, MultiPoly,
};
use mzv_core::identities::{
    acceptance_cases, example1_table, extended_cases, format_example1_table, run_cases, try_verify, Context, Flavor,
    Identity, Params, ShRoute, SuiteSummary, VerifyConfig,
};
use mzv_core::index_algebra::{Index, MzvSymbolPoly};
use mzv_core::zeta_numerics::{Ball, BallRecord, PrecisionConfig, ZetaCache};
use mzv_core::{Error, Result};
use serde::Serialize;

use crate::{Command, GlobalOpts};

/// `Ok(false)` means a verification failed.
pub fn run(g: &GlobalOpts, cmd: Command) -> Result<bool> {
    match cmd {
        Command::Partitions { r, b, count } => return partitions(g, r, b.as_deref(), count),
        Command::Bell { r, k, stirling } => return bell(g, r, k, stirling),
        Command::Verify { list: true, .. } => return list_identities(g),
        _ => {}
    }
    let cfg = config(g)?;
    print_config(g, &cfg);
    let ctx = context(g, cfg)?;
    let out = match cmd {
        Command::Eval { kind, index } => eval(g, &ctx, &kind, &index),
        Command::Reg { flavor, index, route } => reg(g, &ctx, &flavor, &index, &route),
        Command::Verify { identity, index, k, l, r, b, display, route, .. } => {
            let id: Identity = identity.expect("clap requires it").parse()?;
            let params = Params {
                index: index.map(|s| s.parse()).transpose()?,
                k,
                l,
                r,
                b: b.map(|s| parse_list(&s)).transpose()?,
                display,
                route: route.map(|s| s.parse()).transpose()?,
            };
            let report = try_verify(&ctx, id, &params)?;
            if g.json {
                println!("{}", report.to_json());
            } else {
                println!("{report}");
                for c in &report.coefficients {
                    if report.method == "exact" {
                        println!("    [{}] {} = {}", c.power, c.lhs, c.rhs);
                    } else {
                        println!(
                            "    T^{}: {} vs {} deviation {:.2e} bound {:.2e}",
                            c.power, c.lhs, c.rhs, c.deviation, c.bound
                        );
                    }
                }
            }
            Ok(report.pass)
        }
        Command::Table { which, k, l } => {
            if which != "example1" {
                return Err(Error::Parse(format!("unknown table '{which}' (only example1)")));
            }
            let reports = example1_table(&ctx, &parse_list(&k)?, &parse_list(&l)?)?;
            if g.json {
                for r in &reports {
                    println!("{}", r.to_json());
                }
            } else {
                print!("{}", format_example1_table(&reports));
            }
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Suite { extended, verbose } => {
            let mut cases = acceptance_cases();
            if extended {
                cases.extend(extended_cases());
            }
            let start = Instant::now();
            let reports = run_cases(&ctx, &cases, g.jobs)?;
            let summary = SuiteSummary::new(&cases, &reports);
            if g.json {
                for r in &reports {
                    println!("{}", r.to_json());
                }
            } else {
                for r in reports.iter().filter(|r| verbose || !r.pass) {
                    println!("{r}");
                }
                println!("{}", summary.to_text());
                println!("wall time {:.2}s", start.elapsed().as_secs_f64());
            }
            Ok(summary.all_passed())
        }
        Command::Partitions { .. } | Command::Bell { .. } => unreachable!("handled above"),
    };
    if let Some(path) = &g.cache {
        if let Some(cache) = ctx.evaluator().cache() {
            fs::write(path, cache.to_json(&cfg.precision))
                .map_err(|e| Error::Parse(format!("cannot write cache {}: {e}", path.display())))?;
        }
    }
    out
}

fn config(g: &GlobalOpts) -> Result<VerifyConfig> {
    let precision = PrecisionConfig {
        prec_bits: g.prec_bits,
        trunc: g.trunc,
        tail_order: g.tail_order,
        tolerance: g.tol.unwrap_or(PrecisionConfig::default().tolerance),
    };
    precision.validate()?;
    if let Some(t) = g.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Domain(format!("--tol must be positive, got {t}")));
        }
    }
    match g.jobs {
        Some(0) => return Err(Error::Domain("--jobs must be at least 1".into())),
        Some(j) => {
            // only fails when a pool already exists, which is harmless here
            let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
        }
        None => {}
    }
    Ok(VerifyConfig {
        precision,
        series_order: g.series_order,
        tolerance: g.tol,
        ..Default::default()
    })
}

fn print_config(g: &GlobalOpts, cfg: &VerifyConfig) {
    let p = &cfg.precision;
    eprintln!(
        "# prec-bits={} trunc={} tail-order={} series-order={} tol={} jobs={}{}",
        p.prec_bits,
        p.trunc,
        p.tail_order,
        cfg.series_order.map_or("auto".into(), |n| n.to_string()),
        cfg.tolerance.map_or("per-identity".into(), |t| format!("{t:e}")),
        g.jobs.map_or("auto".into(), |n| n.to_string()),
        g.cache.as_ref().map_or(String::new(), |c| format!(" cache={}", c.display())),
    );
}

fn context(g: &GlobalOpts, cfg: VerifyConfig) -> Result<Context> {
    match &g.cache {
        Some(path) if path.exists() => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read cache {}: {e}", path.display())))?;
            Context::with_cache(cfg, ZetaCache::from_json(&text, &cfg.precision)?)
        }
        _ => Context::new(cfg),
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("'{s}' is not a comma-separated list of integers")))
        })
        .collect()
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    kind: &'a str,
    index: String,
    value: String,
    bound: f64,
    seconds: f64,
}

fn eval(g: &GlobalOpts, ctx: &Context, kind: &str, index: &str) -> Result<bool> {
    let start = Instant::now();
    let ev = ctx.evaluator();
    let idx: Index = index.parse()?;
    let (name, value): (String, Ball) = match kind {
        "zeta" => {
            if idx.depth() != 1 {
                return Err(Error::Domain(format!("zeta takes a single integer, got '{index}'")));
            }
            let m = idx.parts()[0];
            (format!("ζ({m})"), ev.zeta_single(m)?)
        }
        "mzv" => (format!("ζ({idx})"), ev.mzv(&idx)?),
        "mzsv" => (format!("ζ*({idx})"), ev.mzsv(&idx)?),
        _ => return Err(Error::Parse(format!("unknown kind '{kind}' (expected zeta, mzv or mzsv)"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let rec = BallRecord::from(&value);
    if g.json {
        let out = EvalRecord { kind, index: idx.to_string(), value: rec.value, bound: rec.bound, seconds };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!("{name} = {} ± {:.1e}", rec.value, rec.bound);
        println!("time {seconds:.3}s");
    }
    Ok(true)
}

#[derive(Serialize)]
struct RegRecord {
    flavor: String,
    index: String,
    symbolic: String,
    coefficients: Vec<BallRecord>,
}

fn reg(g: &GlobalOpts, ctx: &Context, flavor: &str, index: &str, route: &str) -> Result<bool> {
    let flavor: Flavor = flavor.parse()?;
    let route: ShRoute = route.parse()?;
    let idx: Index = index.parse()?;
    if idx.is_empty() {
        return Err(Error::Domain("the index must be nonempty".into()));
    }
    let poly: MzvSymbolPoly = match flavor {
        Flavor::Harm => ctx.reg().harm(&idx),
        Flavor::StarHarm => ctx.reg().harm_star(&idx),
        Flavor::Sh => ctx.sh(&idx, route)?,
        Flavor::StarSh => ctx.star_sh(&idx)?,
    };
    let numeric = ctx.evaluate(&poly)?;
    if g.json {
        let out = RegRecord {
            flavor: flavor.to_string(),
            index: idx.to_string(),
            symbolic: poly.to_string(),
            coefficients: numeric.coeffs().iter().map(BallRecord::from).collect(),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!("{poly}");
        for (i, c) in numeric.coeffs().iter().enumerate() {
            println!("    T^{i}: {} ± {:.1e}", c.to_decimal(30), c.rad());
        }
    }
    Ok(true)
}

fn list_identities(g: &GlobalOpts) -> Result<bool> {
    for id in Identity::ALL {
        if g.json {
            let v = serde_json::json!({ "identity": id.name(), "summary": id.summary(), "tolerance": id.default_tolerance() });
            println!("{v}");
        } else {
            println!("{:<20} {}", id.name(), id.summary());
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct PartitionRecord {
    partition: String,
    blocks: usize,
    c: String,
    c_star: String,
}

fn partitions(g: &GlobalOpts, r: u32, b: Option<&str>, count: bool) -> Result<bool> {
    let ground: Vec<u32> = (1..=r).collect();
    let parts = match b {
        Some(b) => enum_restricted_partitions(&ground, &parse_list(b)?)?,
        None => enum_set_partitions(&ground)?,
    };
    if count {
        if g.json {
            println!("{}", serde_json::json!({ "r": r, "count": parts.len() }));
        } else {
            println!("{}", parts.len());
        }
        return Ok(true);
    }
    for p in &parts {
        if g.json {
            let rec = PartitionRecord {
                partition: p.to_string(),
                blocks: p.num_blocks(),
                c: coeff_c(p).to_string(),
                c_star: coeff_c_star(p).to_string(),
            };
            println!("{}", serde_json::to_string(&rec).expect("serializable"));
        } else {
            println!("{:<16} c={:<6} c*={}", p.to_string(), coeff_c(p), coeff_c_star(p));
        }
    }
    Ok(true)
}

fn bell(g: &GlobalOpts, r: usize, k: Option<usize>, stirling: bool) -> Result<bool> {
    if stirling {
        for n in 0..=r {
            let first: Vec<String> = (0..=n).map(|k| stirling_first_unsigned(n, k).to_string()).collect();
            let second: Vec<String> = (0..=n).map(|k| stirling_second(n, k).to_string()).collect();
            if g.json {
                println!("{}", serde_json::json!({ "n": n, "first_unsigned": first, "second": second }));
            } else {
                println!("n={n:<3} s̄: {:<40} S: {}", first.join(" "), second.join(" "));
            }
        }
        return Ok(true);
    }
    let xs: Vec<MultiPoly> = (1..=r.max(1) as u32).map(MultiPoly::var).collect();
    let (name, poly) = match k {
        Some(k) => (format!("B_{{{r},{k}}}"), bell_partial(r, k, &xs)?),
        None => (format!("Y_{r}"), bell_complete(r, &xs)?),
    };
    if g.json {
        println!("{}", serde_json::json!({ "polynomial": name, "value": poly.to_string() }));
    } else {
        println!("{name} = {poly}");
    }
    Ok(true)
}
