//! Closures of braids. Strands run upward; `i > 0` is `σ_i`, where the
//! strand at position `i` crosses over the one at `i + 1`, and `-i` is its
//! inverse.

use std::collections::BTreeMap;

use super::{LinkDiagram, MilnorError, Result};

/// The closure of a braid on `n` strands. Components are numbered by the
/// lowest bottom position they pass through; arcs are relabelled
/// consecutively along the components.
pub fn braid_closure(n: usize, word: &[i32]) -> Result<LinkDiagram> {
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let bottom: Vec<u32> = (0..n).map(|_| fresh()).collect();
    let mut at = bottom.clone();
    // Arcs of each strand, keyed by the bottom position it starts from.
    let mut strand_at: Vec<usize> = (0..n).collect();
    let mut arcs: Vec<Vec<u32>> = bottom.iter().map(|&a| vec![a]).collect();
    let mut crossings = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= n {
            return Err(MilnorError::BadGenerator(g));
        }
        let (l, r) = (i - 1, i);
        let (ne, nw) = (fresh(), fresh());
        crossings.push(if g > 0 { [at[r], ne, nw, at[l]] } else { [at[l], at[r], ne, nw] });
        arcs[strand_at[l]].push(ne);
        arcs[strand_at[r]].push(nw);
        at[r] = ne;
        at[l] = nw;
        strand_at.swap(l, r);
    }
    // Close up: the top arc at each position is the bottom arc there.
    let mut rename = BTreeMap::new();
    for p in 0..n {
        if at[p] != bottom[p] {
            rename.insert(at[p], bottom[p]);
        }
    }
    let end_pos: BTreeMap<usize, usize> = strand_at.iter().enumerate().map(|(p, &s)| (s, p)).collect();
    let mut done = vec![false; n];
    let mut comps: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut s = start;
        while !done[s] {
            done[s] = true;
            let a = &arcs[s];
            comp.extend_from_slice(if a.len() > 1 { &a[..a.len() - 1] } else { a });
            s = end_pos[&s];
        }
        comps.push(comp);
    }
    let mut relabel = BTreeMap::new();
    for &a in comps.iter().flatten() {
        let k = relabel.len() as u32 + 1;
        relabel.insert(a, k);
    }
    let map = |a: u32| relabel[rename.get(&a).unwrap_or(&a)];
    let crossings = crossings.into_iter().map(|x: [u32; 4]| x.map(map)).collect();
    let comps = comps.into_iter().map(|c| c.into_iter().map(map).collect()).collect();
    LinkDiagram::new(crossings, Some(comps), None)
}

/// Replace the strand at `pos` (1-based), which must return to its own
/// position, by two parallel strands. With `join` a final `σ` between the
/// copies fuses them into the (2,1)-cable.
pub fn double_strand(n: usize, word: &[i32], pos: usize, join: bool) -> Result<(usize, Vec<i32>)> {
    if pos == 0 || pos > n {
        return Err(MilnorError::NotPure(pos));
    }
    let mut strand_at: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    let s = pos - 1;
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= n {
            return Err(MilnorError::BadGenerator(g));
        }
        let e = g.signum();
        let (l, r) = (i - 1, i);
        let dpos = strand_at.iter().position(|&x| x == s).expect("strand present");
        // Generator index in the new braid for an old left position.
        let shift = |p: usize| if dpos < p { p + 1 } else { p };
        let ni = shift(l) as i32 + 1;
        if strand_at[l] == s {
            out.extend([e * (ni + 1), e * ni]);
        } else if strand_at[r] == s {
            out.extend([e * ni, e * (ni + 1)]);
        } else {
            out.push(e * ni);
        }
        strand_at.swap(l, r);
    }
    if strand_at[s] != s {
        return Err(MilnorError::NotPure(pos));
    }
    if join {
        out.push(pos as i32);
    }
    Ok((n + 1, out))
}
