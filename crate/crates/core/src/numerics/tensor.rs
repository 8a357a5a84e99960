/// Cubic `(d+1)^3` tensor indexed as `t[h][i][j]`, matching `p^h_{i,j}` and `q^h_{i,j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Clone> Tensor3<T> {
    pub fn filled(dim: usize, value: T) -> Self {
        Tensor3 {
            dim,
            data: vec![value; dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for h in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    data.push(f(h, i, j));
                }
            }
        }
        Tensor3 { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, h: usize, i: usize, j: usize) -> &T {
        &self.data[(h * self.dim + i) * self.dim + j]
    }

    pub fn set(&mut self, h: usize, i: usize, j: usize, v: T) {
        let d = self.dim;
        self.data[(h * d + i) * d + j] = v;
    }

    /// All triples `(h, i, j)` in lexicographic order.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let d = self.dim;
        (0..d).flat_map(move |h| (0..d).flat_map(move |i| (0..d).map(move |j| (h, i, j))))
    }

    /// Nested `[h][i][j]` vectors, for serialization.
    pub fn to_nested<U>(&self, f: impl Fn(&T) -> U) -> Vec<Vec<Vec<U>>> {
        (0..self.dim)
            .map(|h| {
                (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| f(self.get(h, i, j))).collect())
                    .collect()
            })
            .collect()
    }
}
