//! The half-Fibonacci walkthrough: windows, memberships, verdicts and the
//! multi-interval decomposition in one JSON document.

use anyhow::Result;
use num_bigint::BigInt;
use serde_json::{json, Value};

use cutproject::bdequiv::{decide_interval, decide_union, decide_union_shift};
use cutproject::config::SchemeConfig;
use cutproject::equidecomp::{greedy_decompose_1d, propose_shifts_1d, verify_1d};
use cutproject::exactnum::parse_expr;
use cutproject::hadwiger::{hadwiger_1d, Flag1D};
use cutproject::modelset::{delone_stats, density_estimate, generate};
use cutproject::scheme::{ExactBox, Scheme};
use cutproject::window::{IntervalUnion, Window};
use cutproject::ExactNumber;

pub const HALFFIB_SCHEME: &str = r#"{
  "generators": [{"name": "tau", "quadratic": {"D": 5, "p": "1/2", "q": "1/2"}}],
  "m": 1,
  "basis": [["1", "tau"], ["1", "-1/tau"]]
}"#;

fn membership(s: &Scheme, label: &str, v: &ExactNumber) -> Result<Value> {
    Ok(json!({
        "label": label,
        "value": v.to_string(),
        "membership": s.member_p2(std::slice::from_ref(v))?,
    }))
}

pub fn halffib_report() -> Result<Value> {
    let s = SchemeConfig::from_json(HALFFIB_SCHEME)?.build()?;
    let ctx = s.context().clone();
    let e = |x: &str| parse_expr(&ctx, x);
    let g = s.p2_group();

    let (a, b) = (e("-1/tau")?, e("(1-1/tau)/2")?);
    let i = IntervalUnion::interval(a.clone(), b.clone())?;
    let t = e("(1+1/tau)/2")?;
    let k = |n: i64| t.scale_int(&BigInt::from(n));

    let flag = Flag1D::new(a.clone());
    let h_i = hadwiger_1d(&i, &flag, g)?;
    let h_shift = hadwiger_1d(&i.translate(&t), &flag, g)?;

    let window = Window::Intervals(i.clone());
    let range = ExactBox::interval(e("-50")?, e("50")?);
    let sample = generate(&s, &window, &range)?;
    let gaps = delone_stats(&sample)?;

    let j = IntervalUnion::interval(e("-1/tau")?, e("(1-2/tau)/3")?)?;
    let w = j.union(&j.translate(&t))?;
    let w3 = w.translate(&k(3));
    let proposal = propose_shifts_1d(&w, &w3, g)?;
    let pieces = greedy_decompose_1d(&w, &w3, &proposal, g)?;
    let verify = verify_1d(&pieces, &w, &w3, g)?;

    Ok(json!({
        "scheme": {
            "det": s.lattice().det().to_string(),
            "det_abs": s.lattice().det_abs().to_string(),
            "det_abs_float": s.lattice().det_abs().to_f64(),
        },
        "single_interval": {
            "window": i.to_string(),
            "measure": i.measure().to_string(),
            "shift": t.to_string(),
            "memberships": [
                membership(&s, "|I|", &i.measure())?,
                membership(&s, "t", &t)?,
                membership(&s, "2t", &k(2))?,
                membership(&s, "3t", &k(3))?,
            ],
            "invariant": {
                "flag": a.to_string(),
                "H(I)": h_i.value.to_string(),
                "H(I+t)": h_shift.value.to_string(),
            },
            "decision": decide_interval(&s, &a, &b, &t)?,
        },
        "sample": {
            "range": ["-50", "50"],
            "density": density_estimate(&sample)?,
            "gaps": gaps.distinct_gaps.iter().map(ToString::to_string).collect::<Vec<_>>(),
        },
        "multi_interval": {
            "window": w.to_string(),
            "target": w3.to_string(),
            "lattice_decision": decide_union(&s, &w)?,
            "proposed_shifts": proposal.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "decomposition": pieces.to_json(),
            "verify": verify,
            "shift_decision": decide_union_shift(&s, &w, &k(3))?,
        },
    }))
}
