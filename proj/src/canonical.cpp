#include "unets/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <string_view>
#include <tuple>

namespace unets {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    return h ^ (h >> 33);
}

struct Nbr {
    int to;
    int mult;
};

// Dense copy of a multigraph used during canonicalization.
struct Dense {
    int n = 0;
    std::vector<VertexId> ids;
    std::vector<Label> label;
    std::vector<int> loops;
    std::vector<int> degree;
    std::vector<std::vector<Nbr>> adj;
    std::vector<std::pair<int, int>> edges;

    explicit Dense(const MultiGraph& g) {
        ids = g.vertices();
        n = static_cast<int>(ids.size());
        std::vector<int> index(g.vertex_bound(), -1);
        for (int i = 0; i < n; ++i) index[ids[i]] = i;
        label.resize(n);
        loops.assign(n, 0);
        degree.assign(n, 0);
        adj.resize(n);
        for (int i = 0; i < n; ++i) {
            label[i] = g.label(ids[i]);
            degree[i] = static_cast<int>(g.degree(ids[i]));
        }
        for (EdgeId e : g.edges()) {
            const auto [u, v] = g.ends(e);
            const int a = index[u];
            const int b = index[v];
            edges.emplace_back(a, b);
            if (a == b) {
                ++loops[a];
                continue;
            }
            auto bump = [&](int x, int y) {
                for (auto& nb : adj[x])
                    if (nb.to == y) {
                        ++nb.mult;
                        return;
                    }
                adj[x].push_back({y, 1});
            };
            bump(a, b);
            bump(b, a);
        }
    }
};

class Canonicalizer {
public:
    explicit Canonicalizer(const MultiGraph& g) : d_(g) {
        sig_.resize(d_.n);
        order_.resize(d_.n);
        scratch_.resize(d_.n);
    }

    std::vector<int> initial_colours() {
        std::vector<int> idx(d_.n);
        std::iota(idx.begin(), idx.end(), 0);
        auto key = [&](int i) { return std::make_tuple(d_.label[i], d_.degree[i], d_.loops[i]); };
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) < key(b); });
        std::vector<int> col(d_.n);
        for (int p = 0; p < d_.n; ++p) {
            if (p > 0 && key(idx[p]) == key(idx[p - 1]))
                col[idx[p]] = col[idx[p - 1]];
            else
                col[idx[p]] = p;
        }
        return col;
    }

    // Colours are cell start positions. Refines until the number of cells
    // stops growing.
    int refine(std::vector<int>& col) {
        int cells = count_cells(col);
        while (cells < d_.n) {
            for (int i = 0; i < d_.n; ++i) {
                auto& s = scratch_[i];
                s.clear();
                for (const auto& nb : d_.adj[i])
                    s.push_back((static_cast<std::uint64_t>(col[nb.to]) << 8) | static_cast<std::uint64_t>(nb.mult));
                std::sort(s.begin(), s.end());
                std::uint64_t h = 0x12345;
                for (auto x : s) h = mix(h, x);
                sig_[i] = h;
            }
            std::iota(order_.begin(), order_.end(), 0);
            std::sort(order_.begin(), order_.end(), [&](int a, int b) {
                if (col[a] != col[b]) return col[a] < col[b];
                return sig_[a] < sig_[b];
            });
            std::vector<int> next(d_.n);
            int new_cells = 0;
            for (int p = 0; p < d_.n; ++p) {
                const int v = order_[p];
                if (p > 0) {
                    const int u = order_[p - 1];
                    if (col[u] == col[v] && sig_[u] == sig_[v]) {
                        next[v] = next[u];
                        continue;
                    }
                }
                next[v] = p;
                ++new_cells;
            }
            col.swap(next);
            if (new_cells == cells) break;
            cells = new_cells;
        }
        return cells;
    }

    std::uint64_t hash_of(const std::vector<int>& col) {
        std::vector<int> idx(d_.n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return col[a] < col[b]; });
        std::uint64_t h = mix(d_.n, d_.edges.size());
        for (int i : idx) {
            h = mix(h, static_cast<std::uint64_t>(col[i]));
            h = mix(h, d_.label[i]);
            h = mix(h, (static_cast<std::uint64_t>(d_.degree[i]) << 16) | static_cast<std::uint64_t>(d_.loops[i]));
            std::vector<std::uint64_t> s;
            for (const auto& nb : d_.adj[i])
                s.push_back((static_cast<std::uint64_t>(col[nb.to]) << 8) | static_cast<std::uint64_t>(nb.mult));
            std::sort(s.begin(), s.end());
            for (auto x : s) h = mix(h, x);
        }
        return h;
    }

    void run() {
        std::vector<int> col = initial_colours();
        refine(col);
        std::vector<int> prefix;
        search(col, prefix);
    }

    CanonicalCode code() const {
        std::string out;
        auto put = [&](std::uint32_t x) {
            while (x >= 0x80) {
                out.push_back(static_cast<char>((x & 0x7f) | 0x80));
                x >>= 7;
            }
            out.push_back(static_cast<char>(x));
        };
        put(static_cast<std::uint32_t>(d_.n));
        for (int p = 0; p < d_.n; ++p) put(best_[p]);
        put(static_cast<std::uint32_t>(d_.edges.size()));
        for (std::size_t i = static_cast<std::size_t>(d_.n); i < best_.size(); ++i) put(best_[i]);
        return CanonicalCode(std::move(out));
    }

    std::vector<VertexId> order() const {
        std::vector<VertexId> out(d_.n);
        for (int i = 0; i < d_.n; ++i) out[best_pos_[i]] = d_.ids[i];
        return out;
    }

    const Dense& dense() const { return d_; }

private:
    static int count_cells(const std::vector<int>& col) {
        int c = 0;
        std::vector<char> seen(col.size(), 0);
        for (int x : col)
            if (!seen[x]) {
                seen[x] = 1;
                ++c;
            }
        return c;
    }

    void leaf(const std::vector<int>& pos) {
        std::vector<std::uint32_t> cand(d_.n);
        for (int i = 0; i < d_.n; ++i) cand[pos[i]] = d_.label[i];
        std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
        es.reserve(d_.edges.size());
        for (auto [a, b] : d_.edges) {
            std::uint32_t p = pos[a];
            std::uint32_t q = pos[b];
            if (p > q) std::swap(p, q);
            es.emplace_back(p, q);
        }
        std::sort(es.begin(), es.end());
        for (auto [p, q] : es) {
            cand.push_back(p);
            cand.push_back(q);
        }
        if (!have_best_ || cand < best_) {
            best_ = std::move(cand);
            best_pos_ = pos;
            have_best_ = true;
            return;
        }
        if (cand == best_) {
            // Same code: the position correspondence is an automorphism.
            std::vector<int> inv(d_.n);
            for (int i = 0; i < d_.n; ++i) inv[best_pos_[i]] = i;
            std::vector<int> gamma(d_.n);
            for (int i = 0; i < d_.n; ++i) gamma[i] = inv[pos[i]];
            autos_.push_back(std::move(gamma));
        }
    }

    int find(std::vector<int>& uf, int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    }

    bool pruned(int v, const std::vector<int>& explored, const std::vector<int>& prefix) {
        if (explored.empty() || autos_.empty()) return false;
        std::vector<int> uf(d_.n);
        std::iota(uf.begin(), uf.end(), 0);
        for (const auto& g : autos_) {
            bool fixes = true;
            for (int p : prefix)
                if (g[p] != p) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int i = 0; i < d_.n; ++i) {
                const int a = find(uf, i);
                const int b = find(uf, g[i]);
                if (a != b) uf[a] = b;
            }
        }
        const int root = find(uf, v);
        for (int w : explored)
            if (find(uf, w) == root) return true;
        return false;
    }

    void search(const std::vector<int>& col, std::vector<int>& prefix) {
        int target = -1;
        int best_size = 0;
        std::vector<int> size(d_.n, 0);
        for (int x : col) ++size[x];
        for (int c = 0; c < d_.n; ++c)
            if (size[c] > 1) {
                target = c;
                best_size = size[c];
                break;
            }
        if (target < 0) {
            leaf(col);
            return;
        }
        std::vector<int> members;
        members.reserve(best_size);
        for (int i = 0; i < d_.n; ++i)
            if (col[i] == target) members.push_back(i);
        std::vector<int> explored;
        for (int v : members) {
            if (pruned(v, explored, prefix)) continue;
            explored.push_back(v);
            std::vector<int> child = col;
            for (int w : members)
                if (w != v) child[w] = target + 1;
            refine(child);
            prefix.push_back(v);
            search(child, prefix);
            prefix.pop_back();
        }
    }

    Dense d_;
    std::vector<std::uint64_t> sig_;
    std::vector<int> order_;
    std::vector<std::vector<std::uint64_t>> scratch_;
    std::vector<std::uint32_t> best_;
    std::vector<int> best_pos_;
    bool have_best_ = false;
    std::vector<std::vector<int>> autos_;
};

}  // namespace

std::string CanonicalCode::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (unsigned char c : bytes_) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

std::size_t CodeHash::operator()(const CanonicalCode& c) const noexcept {
    return std::hash<std::string_view>{}(c.bytes());
}

CanonicalLabelling canonical_labelling(const MultiGraph& g) {
    Canonicalizer c(g);
    c.run();
    return {c.code(), c.order()};
}

CanonicalCode canonical_form(const MultiGraph& g) {
    Canonicalizer c(g);
    c.run();
    return c.code();
}

MultiGraph decode(const CanonicalCode& code) {
    const std::string& s = code.bytes();
    std::size_t at = 0;
    auto get = [&]() {
        std::uint32_t x = 0;
        int shift = 0;
        while (true) {
            if (at >= s.size()) throw GraphError("decode: truncated canonical code");
            const auto b = static_cast<unsigned char>(s[at++]);
            x |= static_cast<std::uint32_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
        }
        return x;
    };
    MultiGraph g;
    const std::uint32_t n = get();
    for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(get());
    const std::uint32_t m = get();
    for (std::uint32_t i = 0; i < m; ++i) {
        const std::uint32_t p = get();
        const std::uint32_t q = get();
        g.add_edge(p, q);
    }
    return g;
}

std::uint64_t invariant_hash(const MultiGraph& g) {
    Canonicalizer c(g);
    std::vector<int> col = c.initial_colours();
    c.refine(col);
    return c.hash_of(col);
}

std::vector<VertexId> isomorphism(const MultiGraph& a, const MultiGraph& b) {
    CanonicalLabelling la = canonical_labelling(a);
    CanonicalLabelling lb = canonical_labelling(b);
    if (la.code != lb.code) return {};
    std::vector<VertexId> map(a.vertex_bound(), kNoVertex);
    for (std::size_t p = 0; p < la.order.size(); ++p) map[la.order[p]] = lb.order[p];
    return map;
}

}  // namespace unets
