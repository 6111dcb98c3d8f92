/// All `k`-subsets of `1..=l` in lexicographic order.
pub(crate) fn combinations(l: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > l {
        return out;
    }
    let mut current: Vec<u32> = (1..=k).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k as usize)
            .rev()
            .find(|&i| current[i] < l - (k - 1 - i as u32))
        else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..k as usize {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Subsets of `1..=l` of size below `k`: by size, then lexicographically.
pub(crate) fn simplicial_prefix(l: u32, k: u32) -> Vec<Vec<u32>> {
    (0..k.min(l + 1)).flat_map(|s| combinations(l, s)).collect()
}
