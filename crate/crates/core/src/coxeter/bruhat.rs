use super::CoxeterSystem;

/// The Bruhat order as one bitset row per element: row `w` holds `{y ≤ w}`.
///
/// Rows are filled by the descent recursion: for a left descent `s` of `w`,
/// `{y ≤ w} = {y ≤ sw} ∪ {sy : y ≤ sw}`.
#[derive(Clone, Debug)]
pub struct BruhatOrder {
    size: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BruhatOrder {
    pub fn new(sys: &CoxeterSystem) -> BruhatOrder {
        let size = sys.size();
        let stride = size.div_ceil(64);
        let mut bits = vec![0u64; size * stride];
        bits[0] = 1;
        for w in 1..size {
            let s = sys.left_descents(w)[0];
            let sw = sys.lmul(s, w);
            let (done, rest) = bits.split_at_mut(w * stride);
            let src = &done[sw * stride..(sw + 1) * stride];
            let dst = &mut rest[..stride];
            dst.copy_from_slice(src);
            for (k, &word) in src.iter().enumerate() {
                let mut m = word;
                while m != 0 {
                    let y = k * 64 + m.trailing_zeros() as usize;
                    m &= m - 1;
                    let z = sys.lmul(s, y);
                    dst[z / 64] |= 1 << (z % 64);
                }
            }
        }
        BruhatOrder { size, stride, bits }
    }

    #[inline]
    pub fn leq(&self, y: usize, w: usize) -> bool {
        self.bits[w * self.stride + y / 64] >> (y % 64) & 1 == 1
    }

    /// All `y ≤ w` in increasing index order.
    pub fn below(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[w * self.stride..(w + 1) * self.stride];
        row.iter().enumerate().flat_map(|(k, &word)| {
            let mut m = word;
            std::iter::from_fn(move || {
                if m == 0 {
                    return None;
                }
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn count_below(&self, w: usize) -> usize {
        self.bits[w * self.stride..(w + 1) * self.stride]
            .iter()
            .map(|x| x.count_ones() as usize)
            .sum()
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// Subword criterion: `y ≤ w` iff some subword of a reduced word of `w`
/// multiplies to `y`. Exponential; for cross-checking small groups.
pub fn bruhat_leq_subword(sys: &CoxeterSystem, y: usize, w: usize) -> bool {
    let word = sys.word(w);
    let mut reach = vec![false; sys.size()];
    reach[0] = true;
    let mut current = vec![0usize];
    for &s in word {
        let mut next = current.clone();
        for &x in &current {
            let xs = sys.rmul(x, s as usize);
            if !reach[xs] {
                reach[xs] = true;
                next.push(xs);
            }
        }
        current = next;
    }
    reach[y]
}
