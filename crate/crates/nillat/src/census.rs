//! Bounded enumeration of canonical parameters, grouped into isomorphism classes where decided.

use nillat_core::classify::{
    g4xr_construct, g4xr_validate, g52_lattice, g54_lattice, g56_equivalent, g56_lattice, s4_member, s6_member,
    G4xRParams, G52Canonical, G54Canonical, G56Canonical,
};
use nillat_core::linalg::IntMatrix;
use serde_json::{json, Value};

use crate::json::int_matrix_to_json;
use crate::CliError;

pub const DEFAULT_ENTRY_BOUND: u32 = 6;

/// Census of `group` up to `bound`; `entry_bound` caps the diagonal of `D` for g5_4 and g5_6.
pub fn census(group: &str, bound: u32, entry_bound: u32, seed: u64) -> Result<Value, CliError> {
    if bound == 0 {
        return Err(CliError::Usage("bound must be at least 1".into()));
    }
    let b = i64::from(bound);
    let report = match group {
        "g5_2" => census_g52(b, seed)?,
        "g4xR" => census_g4xr(b, seed)?,
        "g5_4" => census_g54(b, i64::from(entry_bound), seed)?,
        "g5_6" => census_g56(b, i64::from(entry_bound), seed)?,
        other => return Err(CliError::Usage(format!("census is not available for {other}"))),
    };
    Ok(report)
}

fn envelope(group: &str, bound: i64, decided: bool, classes: Vec<Value>) -> Value {
    json!({
        "group": group,
        "bound": bound,
        "classification": if decided { "decided" } else { "representatives" },
        "count": classes.len(),
        "classes": classes,
    })
}

fn census_g52(bound: i64, seed: u64) -> Result<Value, CliError> {
    let mut classes = Vec::new();
    for r2 in 1..=bound {
        for r1 in (1..=r2).filter(|r1| r2 % r1 == 0) {
            let c = G52Canonical::new(r1, r2)?;
            let verified = g52_lattice(&c.params())?.verify_closure_with_seed(seed);
            classes.push((r1, r2, verified));
        }
    }
    classes.sort();
    let classes = classes.into_iter().map(|(r1, r2, v)| json!({"r": [r1, r2], "verified": v})).collect();
    Ok(envelope("g5_2", bound, true, classes))
}

fn census_g4xr(bound: i64, seed: u64) -> Result<Value, CliError> {
    let mut classes = Vec::new();
    for p1 in 1..=bound {
        for p2 in 1..=bound {
            for p3 in 0..2 * p1 {
                let p = G4xRParams::new(p1, p2, p3);
                if g4xr_validate(&p) {
                    let verified = g4xr_construct(&p)?.verify_closure_with_seed(seed);
                    classes.push(json!({"params": [p1, p2, p3], "verified": verified}));
                }
            }
        }
    }
    Ok(envelope("g4xR", bound, true, classes))
}

/// Upper-triangular `D` in Hermite normal form with diagonal in `1..=entry_bound`.
fn hermite_3x3(entry_bound: i64) -> impl Iterator<Item = [i64; 6]> {
    let diag = move || 1..=entry_bound;
    diag().flat_map(move |a11| {
        diag().flat_map(move |a22| {
            diag().flat_map(move |a33| {
                (0..a11).flat_map(move |a12| {
                    (0..a11).flat_map(move |a13| (0..a22).map(move |a23| [a11, a12, a13, a22, a23, a33]))
                })
            })
        })
    })
}

fn census_g54(bound: i64, entry_bound: i64, seed: u64) -> Result<Value, CliError> {
    let mut found = Vec::new();
    for v in hermite_3x3(entry_bound) {
        let d = IntMatrix::from_i64_rows(&[&[v[0], v[1], v[2]], &[0, v[3], v[4]], &[0, 0, v[5]]]);
        for m in 1..=bound {
            let c = G54Canonical::new(d.clone(), m)?;
            if s4_member(&c) {
                found.push((m, v, g54_lattice(&c)?.verify_closure_with_seed(seed), c));
            }
        }
    }
    found.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
    let classes = found
        .into_iter()
        .map(|(m, _, verified, c)| json!({"d": int_matrix_to_json(&c.d), "m": m, "verified": verified}))
        .collect();
    Ok(envelope("g5_4", bound, false, classes))
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn census_g56(bound: i64, entry_bound: i64, seed: u64) -> Result<Value, CliError> {
    let mut members: Vec<([i64; 7], i64, G56Canonical)> = Vec::new();
    for v in hermite_3x3(entry_bound) {
        for a44 in 1..=entry_bound {
            let d = IntMatrix::from_i64_rows(&[
                &[v[0], v[1], v[2], 0],
                &[0, v[3], v[4], 0],
                &[0, 0, v[5], 0],
                &[0, 0, 0, a44],
            ]);
            for m in 1..=bound {
                let c = G56Canonical::new(d.clone(), m)?;
                if s6_member(&c) {
                    let key = [v[0], v[1], v[2], v[3], v[4], v[5], a44];
                    members.push((key, m, c));
                }
            }
        }
    }
    members.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut parent: Vec<usize> = (0..members.len()).collect();
    for i in 0..members.len() {
        for j in 0..i {
            if g56_equivalent(&members[i].2, &members[j].2)? {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; members.len()];
    for i in 0..members.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    let mut out = Vec::new();
    for class in classes {
        let entries = class
            .iter()
            .map(|&i| {
                let (_, m, c) = &members[i];
                let verified = g56_lattice(c)?.verify_closure_with_seed(seed);
                Ok(json!({"d": int_matrix_to_json(&c.d), "m": m, "verified": verified}))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        out.push(json!({"members": entries}));
    }
    Ok(envelope("g5_6", bound, true, out))
}
