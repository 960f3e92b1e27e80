//! The `.fam` family text format.
//!
//! Line 1 holds `n k m`; each of the following m lines holds k
//! space-separated increasing integers. The parser reports violations with
//! line numbers.

use anyhow::{anyhow, bail, Result};
use interfam_core::SetFamily;

pub fn parse_fam(input: &str) -> Result<SetFamily> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| anyhow!("line 1: missing header `n k m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        bail!("line 1: header must be `n k m`, got {} field(s)", fields.len());
    }
    let n: u32 = fields[0]
        .parse()
        .map_err(|_| anyhow!("line 1: cannot parse n from {:?}", fields[0]))?;
    let k: u32 = fields[1]
        .parse()
        .map_err(|_| anyhow!("line 1: cannot parse k from {:?}", fields[1]))?;
    let m: usize = fields[2]
        .parse()
        .map_err(|_| anyhow!("line 1: cannot parse m from {:?}", fields[2]))?;

    let mut members: Vec<Vec<u32>> = Vec::with_capacity(m);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            if members.len() == m {
                continue; // trailing blank lines are fine
            }
            bail!("line {line_no}: blank line before all {m} member sets were read");
        }
        if members.len() == m {
            bail!("line {line_no}: unexpected extra line after {m} member sets");
        }
        let mut elems = Vec::with_capacity(k as usize);
        for field in line.split_whitespace() {
            let e: u32 = field
                .parse()
                .map_err(|_| anyhow!("line {line_no}: cannot parse element {field:?}"))?;
            elems.push(e);
        }
        if elems.len() != k as usize {
            bail!("line {line_no}: expected {k} elements, got {}", elems.len());
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            bail!("line {line_no}: elements must be strictly increasing");
        }
        members.push(elems);
    }
    if members.len() != m {
        bail!(
            "line {}: expected {m} member sets, file ends after {}",
            members.len() + 2,
            members.len()
        );
    }
    SetFamily::from_elements(n, k, &members).map_err(|e| anyhow!("invalid family: {e}"))
}

pub fn write_fam(family: &SetFamily) -> String {
    let mut out = format!("{} {} {}\n", family.n(), family.k(), family.m());
    for set in family.sets() {
        let elems: Vec<String> = set.elements().iter().map(|e| e.to_string()).collect();
        out.push_str(&elems.join(" "));
        out.push('\n');
    }
    out
}
