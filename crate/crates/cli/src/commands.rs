use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use ternop::algebra::format::{serialize, serialize_all};
use ternop::clause::Assignment;
use ternop::construct::{
    alpha_map, beta_map, dual_groupoid, gamma_from_semiheap, gamma_wq, lambda, natural_ternary,
    natural_ternary_of, omega, phi_g, pi_map, pi_ternary, psi, reconstruct, sigma, star_ternary,
    theta, twin_natural_pair, with_binary, with_ternary, Permutation3, Scheme,
};
use ternop::enumerate::{count, enumerate, EnumSpec};
use ternop::inverse::{
    alpha_determined, clifford_decompose, gh_to_inverse_semigroup, inverse_cert,
    natural_ternary_inverse_check, standard_ternary,
};
use ternop::iso::{automorphisms, find_isomorphism, IsoKind};
use ternop::regression::{render_text, run_suite, Status};
use ternop::{
    check_clause, check_property, classify, parse_clause, Binding, Elem, Error, OpTable,
    PropertyName, Structure,
};

use crate::select::{binding, load, CliResult};
use crate::Command;

fn err(e: Error) -> String {
    e.to_string()
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn assignment_json(s: &Structure, a: &Assignment) -> Value {
    let mut m = Map::new();
    for &(v, e) in &a.0 {
        m.insert(
            v.to_string(),
            Value::String(s.carrier().name(e).to_string()),
        );
    }
    Value::Object(m)
}

pub fn run(cmd: Command) -> CliResult<u8> {
    match cmd {
        Command::Check {
            selector,
            structure,
            prop,
            clause,
            clifford,
            bind,
            json,
        } => {
            let mut s = load(&selector, structure.as_deref())?;
            let b = binding(&bind, Some(&mut s))?;
            if clifford {
                return check_clifford(&s, &b, json);
            }
            let (label, holds, witness, cex) = match (prop, clause) {
                (Some(p), None) => {
                    let p: PropertyName = p.parse().map_err(err)?;
                    let r = check_property(&s, p, &b).map_err(err)?;
                    (p.to_string(), r.holds(), r.witness, r.counterexample)
                }
                (None, Some(text)) => {
                    let c = parse_clause(&text).map_err(err)?;
                    let r = check_clause(&s, &c, &b).map_err(err)?;
                    (c.to_string(), r.holds(), None, r.counterexample)
                }
                _ => return Err("give exactly one of --prop, --clause or --clifford".into()),
            };
            if json {
                print_json(&json!({
                    "structure": s.name(),
                    "check": label,
                    "holds": holds,
                    "witness": witness.map(|w| s.carrier().name(w).to_string()),
                    "counterexample": cex.as_ref().map(|a| assignment_json(&s, a)),
                }));
            } else {
                println!("{label}: {}", if holds { "holds" } else { "fails" });
                if let Some(w) = witness {
                    println!("witness: {}", s.carrier().name(w));
                }
                if let Some(a) = &cex {
                    println!(
                        "counterexample: {} ({})",
                        a.values_with(&s),
                        a.display_with(&s)
                    );
                }
            }
            Ok(if holds { 0 } else { 1 })
        }
        Command::Classify {
            selector,
            structure,
            bind,
            json,
        } => {
            let mut s = load(&selector, structure.as_deref())?;
            let b = binding(&bind, Some(&mut s))?;
            let props = classify(&s, &b).map_err(err)?;
            if json {
                print_json(&json!(props
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()));
            } else {
                props.iter().for_each(|p| println!("{p}"));
            }
            Ok(0)
        }
        Command::Construct {
            what,
            selector,
            structure,
            e,
            perm,
            scheme,
            unary,
            alpha,
            order,
            name,
            bind,
            out,
        } => {
            let text = if what == "twin-natural-pair" {
                let n = order.ok_or("twin-natural-pair needs --order")?;
                let (a, b) = twin_natural_pair(n).map_err(err)?;
                serialize_all(&[a, b])
            } else {
                let selector = selector.ok_or("construct needs an input structure")?;
                let mut s = load(&selector, structure.as_deref())?;
                let b = binding(&bind, Some(&mut s))?;
                let opts = ConstructOpts {
                    e,
                    perm,
                    scheme,
                    unary,
                    alpha,
                };
                let (mut built, header) = construct(&what, &s, &b, &opts)?;
                built.set_name(
                    name.unwrap_or_else(|| format!("{}_{}", s.name(), what.replace('-', "_"))),
                );
                format!("{header}{}", serialize(&built))
            };
            emit(&text, out.as_deref())?;
            Ok(0)
        }
        Command::Iso {
            left,
            right,
            kind,
            bind,
            json,
        } => {
            let mut l = load(&left, None)?;
            let mut r = load(&right, None)?;
            let b = binding(&bind, Some(&mut l))?;
            binding(&bind, Some(&mut r))?;
            let kind: IsoKind = kind.parse().map_err(err)?;
            let found = find_isomorphism(&l, &r, kind, &b).map_err(err)?;
            let shown = found
                .as_ref()
                .map(|f| f.display_with(l.carrier(), r.carrier()));
            if json {
                print_json(&json!({ "isomorphism": shown }));
            } else {
                println!("{}", shown.as_deref().unwrap_or("none"));
            }
            Ok(if found.is_some() { 0 } else { 1 })
        }
        Command::Automorphisms {
            selector,
            structure,
            kind,
            constraint,
            bind,
            json,
        } => {
            let mut s = load(&selector, structure.as_deref())?;
            let b = binding(&bind, Some(&mut s))?;
            let kind: IsoKind = kind.parse().map_err(err)?;
            let c = constraint
                .map(|t| parse_clause(&t))
                .transpose()
                .map_err(err)?;
            let auts = automorphisms(&s, kind, &b, c.as_ref()).map_err(err)?;
            let lines: Vec<String> = auts
                .iter()
                .map(|f| f.display_with(s.carrier(), s.carrier()))
                .collect();
            if json {
                print_json(&json!(lines));
            } else {
                lines.iter().for_each(|l| println!("{l}"));
            }
            Ok(0)
        }
        Command::Enumerate {
            order,
            signature,
            props,
            clause,
            up_to_iso,
            pin,
            count_only,
            out,
        } => {
            let mut spec = EnumSpec::new(order)
                .signature_tokens(&signature)
                .map_err(err)?;
            for tok in props.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                spec = spec.property(tok.parse().map_err(err)?);
            }
            for c in &clause {
                spec = spec.clause(c).map_err(err)?;
            }
            for p in &pin {
                let (name, idx) = p
                    .split_once('=')
                    .ok_or_else(|| format!("expected NAME=INDEX, got `{p}`"))?;
                let idx: Elem = idx
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad index in `{p}`"))?;
                spec = spec.pin(name.trim(), idx);
            }
            spec = spec.up_to_iso(up_to_iso);
            if count_only {
                emit(&format!("{}\n", count(&spec).map_err(err)?), out.as_deref())?;
            } else {
                emit(
                    &serialize_all(&enumerate(&spec).map_err(err)?),
                    out.as_deref(),
                )?;
            }
            Ok(0)
        }
        Command::Regress { filter, json } => {
            let reports = run_suite(filter.as_deref()).map_err(err)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("serializable report")
                );
            } else {
                print!("{}", render_text(&reports));
            }
            Ok(if reports.iter().all(|r| r.status == Status::Pass) {
                0
            } else {
                1
            })
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_clifford(s: &Structure, b: &Binding, json: bool) -> CliResult<u8> {
    let mul = s.op(&b.mul).map_err(err)?;
    let name = |e: Elem| s.carrier().name(e).to_string();
    match clifford_decompose(mul) {
        Ok(d) => {
            if json {
                let comps: Vec<Value> = d
                    .components
                    .iter()
                    .map(|c| json!({ "identity": name(c.identity), "elements": c.elements.iter().map(|&e| name(e)).collect::<Vec<_>>() }))
                    .collect();
                print_json(&json!({ "clifford": true, "components": comps }));
            } else {
                println!("clifford: {} components", d.components.len());
                for c in &d.components {
                    let els: Vec<String> = c.elements.iter().map(|&e| name(e)).collect();
                    println!("{}: {}", name(c.identity), els.join(" "));
                }
            }
            Ok(0)
        }
        Err(Error::NotClifford(msg)) => {
            if json {
                print_json(&json!({ "clifford": false, "reason": msg }));
            } else {
                println!("not clifford: {msg}");
            }
            Ok(1)
        }
        Err(e) => Err(err(e)),
    }
}

struct ConstructOpts {
    e: Option<String>,
    perm: Option<String>,
    scheme: Option<String>,
    unary: Option<String>,
    alpha: Option<String>,
}

fn element(s: &Structure, tok: Option<&str>, what: &str) -> CliResult<Option<Elem>> {
    tok.map(|t| {
        s.resolve(t)
            .ok_or_else(|| format!("{what} `{t}` names no element"))
    })
    .transpose()
}

fn required_element(s: &Structure, tok: Option<&str>, what: &str) -> CliResult<Elem> {
    element(s, tok, what)?.ok_or_else(|| format!("this construction needs --{what}"))
}

/// The bound ternary operation, or the natural ternary of the bound product.
fn ternary_of(s: &Structure, b: &Binding) -> CliResult<OpTable> {
    match s.ops().get(&b.ternary) {
        Some(t) => Ok(t.clone()),
        None => Ok(natural_ternary(s.op(&b.mul).map_err(err)?)),
    }
}

/// Build `what` from `s`; also returns header comment lines for the output.
fn construct(
    what: &str,
    s: &Structure,
    b: &Binding,
    o: &ConstructOpts,
) -> CliResult<(Structure, String)> {
    let mul = || s.op(&b.mul).cloned().map_err(err);
    let tern = || s.op(&b.ternary).cloned().map_err(err);
    let e = || element(s, o.e.as_deref().or(b.unit.as_deref()), "e");
    let binary = |t: OpTable| with_binary(s, "out", t);
    let ternary = |t: OpTable| with_ternary(s, t);
    let built = match what {
        "natural-ternary" => natural_ternary_of(s, b).map_err(err)?,
        "star-ternary" => {
            let u = s.op(o.unary.as_deref().unwrap_or(&b.prime)).map_err(err)?;
            ternary(star_ternary(&mul()?, u).map_err(err)?)
        }
        "dual" => dual_groupoid(s, b).map_err(err)?,
        "pi-ternary" => {
            let p: Permutation3 = o
                .perm
                .as_deref()
                .ok_or("pi-ternary needs --perm")?
                .parse()
                .map_err(err)?;
            ternary(pi_ternary(&ternary_of(s, b)?, p))
        }
        "gamma" => {
            let l = e()?.ok_or("gamma needs --e or --unit")?;
            gamma_from_semiheap(s, b, l).map_err(err)?
        }
        "reconstruct" => {
            let scheme: Scheme = o
                .scheme
                .as_deref()
                .ok_or("reconstruct needs --scheme")?
                .parse()
                .map_err(err)?;
            reconstruct(s, scheme, b).map_err(err)?
        }
        "psi" => ternary(psi(&mul()?).map_err(err)?),
        "omega" => binary(omega(&tern()?, required_element(s, o.e.as_deref(), "e")?).map_err(err)?),
        "pi-map" => {
            binary(pi_map(&tern()?, required_element(s, o.e.as_deref(), "e")?).map_err(err)?)
        }
        "lambda" => ternary(lambda(&mul()?).map_err(err)?),
        "gamma-wq" => binary(gamma_wq(&mul()?).map_err(err)?),
        "phi-g" => binary(phi_g(&mul()?).map_err(err)?),
        "theta" => ternary(theta(&mul()?).map_err(err)?),
        "sigma" => binary(sigma(&tern()?, element(s, o.e.as_deref(), "e")?).map_err(err)?),
        "alpha-map" => ternary(alpha_map(&tern()?, element(s, o.e.as_deref(), "e")?).map_err(err)?),
        "beta-map" => {
            ternary(beta_map(&tern()?, required_element(s, o.e.as_deref(), "e")?).map_err(err)?)
        }
        "standard-ternary" => ternary(standard_ternary(&mul()?).map_err(err)?),
        "inverse" => {
            let cert = inverse_cert(&mul()?).map_err(err)?;
            let names: Vec<&str> = cert
                .idempotents
                .iter()
                .map(|&i| s.carrier().name(i))
                .collect();
            let mut out = s.clone();
            out.insert_op("inv", cert.inv).map_err(err)?;
            return Ok((out, format!("# idempotents: {}\n", names.join(" "))));
        }
        "gh-to-inv" | "natural-to-inv" => {
            let prime = s.op(&b.prime).map_err(err)?;
            let hat = s.op(&b.hat).map_err(err)?;
            let t = tern()?;
            let m = if what == "gh-to-inv" {
                gh_to_inverse_semigroup(&t, prime, hat)
            } else {
                natural_ternary_inverse_check(&t, prime, hat)
            };
            binary(m.map_err(err)?)
        }
        "alpha-determined" => {
            let a = s.op(o.alpha.as_deref().unwrap_or("alpha")).map_err(err)?;
            binary(alpha_determined(&mul()?, a).map_err(err)?)
        }
        _ => return Err(format!("unknown construction `{what}`")),
    };
    Ok((built, String::new()))
}
