use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use super::Grammar;

/// Bottom-up CYK over nonterminal bitsets; `table[len - 1][i]` holds the
/// nonterminals deriving `w[i..i + len]`.
pub(super) fn recognize(g: &Grammar, w: &[usize]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    let width = g.nonterminals.len();
    let mut table: Vec<Vec<FixedBitSet>> = Vec::with_capacity(n);
    let mut row = Vec::with_capacity(n);
    for &letter in w {
        let mut cell = FixedBitSet::with_capacity(width);
        if let Some(heads) = g.by_terminal.get(letter) {
            for &a in heads {
                cell.insert(a);
            }
        }
        row.push(cell);
    }
    table.push(row);
    for len in 2..=n {
        let mut row = Vec::with_capacity(n + 1 - len);
        for i in 0..=n - len {
            let mut cell = FixedBitSet::with_capacity(width);
            for split in 1..len {
                let left = &table[split - 1][i];
                let right = &table[len - split - 1][i + split];
                if right.is_clear() {
                    continue;
                }
                for b in left.ones() {
                    for &(c, a) in &g.by_left[b] {
                        if right.contains(c) {
                            cell.insert(a);
                        }
                    }
                }
            }
            row.push(cell);
        }
        table.push(row);
    }
    table[n - 1][0].contains(g.start)
}
