#include "descenso/sset.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace descenso {

SSet::SSet(size_t trunc, std::vector<std::vector<std::string>> ids,
           std::vector<std::vector<std::vector<int>>> faces,
           std::vector<std::vector<std::vector<int>>> degens, std::optional<int> basepoint,
           bool validate)
    : trunc_(trunc), ids_(std::move(ids)), faces_(std::move(faces)), degens_(std::move(degens)),
      base_(basepoint) {
    if (ids_.size() != trunc_ + 1) throw ValidationError("SSet: level count mismatch");
    if (faces_.size() != trunc_ + 1 || degens_.size() != trunc_ + 1)
        throw ValidationError("SSet: operator table size mismatch");
    index_.resize(trunc_ + 1);
    for (size_t n = 0; n <= trunc_; ++n) {
        for (size_t s = 0; s < ids_[n].size(); ++s) {
            auto [it, fresh] = index_[n].emplace(ids_[n][s], static_cast<int>(s));
            if (!fresh) throw ValidationError("SSet: duplicate simplex id " + ids_[n][s]);
        }
        if (n >= 1 && faces_[n].size() != n + 1) throw ValidationError("SSet: face arity mismatch");
        if (n < trunc_ && degens_[n].size() != n + 1)
            throw ValidationError("SSet: degeneracy arity mismatch");
    }
    if (base_ && (ids_[0].empty() || *base_ < 0 || *base_ >= static_cast<int>(ids_[0].size())))
        throw ValidationError("SSet: basepoint out of range");
    if (validate) validate_identities();
}

size_t SSet::size(size_t n) const {
    if (n > trunc_) throw TruncationError("SSet: level beyond truncation");
    return ids_[n].size();
}

int SSet::index_of(size_t n, const std::string& id) const {
    auto it = index_.at(n).find(id);
    if (it == index_.at(n).end()) throw std::out_of_range("SSet: unknown simplex id " + id);
    return it->second;
}

int SSet::basepoint() const {
    if (!base_) throw std::logic_error("SSet: not pointed");
    return *base_;
}

int SSet::base_at(size_t n) const {
    int s = basepoint();
    for (size_t k = 0; k < n; ++k) s = degen(k, 0, s);
    return s;
}

bool SSet::is_degenerate(size_t n, int s) const {
    if (n == 0) return false;
    for (size_t j = 0; j + 1 <= n; ++j)
        for (size_t y = 0; y < ids_[n - 1].size(); ++y)
            if (degen(n - 1, j, static_cast<int>(y)) == s) return true;
    return false;
}

size_t SSet::nondegenerate_count(size_t n) const {
    if (n > trunc_) throw TruncationError("SSet: level beyond truncation");
    if (n == 0) return ids_[0].size();
    std::vector<bool> deg(ids_[n].size(), false);
    for (size_t j = 0; j + 1 <= n; ++j)
        for (size_t y = 0; y < ids_[n - 1].size(); ++y) deg[degen(n - 1, j, static_cast<int>(y))] = true;
    size_t c = 0;
    for (bool b : deg)
        if (!b) ++c;
    return c;
}

size_t SSet::nondeg_bound() const {
    size_t bound = 0;
    for (size_t n = 0; n <= trunc_; ++n)
        if (nondegenerate_count(n) > 0) bound = n + 1;
    return bound;
}

void SSet::validate_identities() const {
    auto fail = [](const char* what) { throw ValidationError(std::string("SSet: ") + what); };
    for (size_t n = 0; n <= trunc_; ++n) {
        size_t sz = ids_[n].size();
        // d_i d_j = d_{j-1} d_i for i < j
        if (n >= 2)
            for (size_t j = 1; j <= n; ++j)
                for (size_t i = 0; i < j; ++i)
                    for (size_t s = 0; s < sz; ++s)
                        if (face(n - 1, i, face(n, j, s)) != face(n - 1, j - 1, face(n, i, s)))
                            fail("face identity fails");
        if (n < trunc_) {
            // s_i s_j = s_{j+1} s_i for i <= j
            if (n + 2 <= trunc_)
                for (size_t j = 0; j <= n; ++j)
                    for (size_t i = 0; i <= j; ++i)
                        for (size_t s = 0; s < sz; ++s)
                            if (degen(n + 1, i, degen(n, j, s)) != degen(n + 1, j + 1, degen(n, i, s)))
                                fail("degeneracy identity fails");
            // face-degeneracy relations at level n+1
            for (size_t j = 0; j <= n; ++j)
                for (size_t i = 0; i <= n + 1; ++i)
                    for (size_t s = 0; s < sz; ++s) {
                        int lhs = face(n + 1, i, degen(n, j, s));
                        int rhs;
                        if (i < j)
                            rhs = n >= 1 ? degen(n - 1, j - 1, face(n, i, s)) : -1;
                        else if (i == j || i == j + 1)
                            rhs = static_cast<int>(s);
                        else
                            rhs = n >= 1 ? degen(n - 1, j, face(n, i - 1, s)) : -1;
                        if (rhs >= 0 && lhs != rhs) fail("mixed identity fails");
                    }
        }
    }
}

bool SSetMap::operator==(const SSetMap& o) const { return comp == o.comp; }

SSetMap sset_identity(const SSetPtr& k) {
    SSetMap m{k, k, {}};
    m.comp.resize(k->trunc() + 1);
    for (size_t n = 0; n <= k->trunc(); ++n) {
        m.comp[n].resize(k->size(n));
        std::iota(m.comp[n].begin(), m.comp[n].end(), 0);
    }
    return m;
}

SSetMap sset_compose(const SSetMap& outer, const SSetMap& inner) {
    SSetMap m{inner.src, outer.tgt, {}};
    size_t levels = std::min(inner.comp.size(), outer.comp.size());
    m.comp.resize(levels);
    for (size_t n = 0; n < levels; ++n) {
        m.comp[n].resize(inner.comp[n].size());
        for (size_t s = 0; s < inner.comp[n].size(); ++s)
            m.comp[n][s] = outer.comp[n][inner.comp[n][s]];
    }
    return m;
}

SSetMap sset_to_base(const SSetPtr& k, const SSetPtr& pointed_tgt) {
    SSetMap m{k, pointed_tgt, {}};
    size_t levels = std::min(k->trunc(), pointed_tgt->trunc()) + 1;
    m.comp.resize(levels);
    for (size_t n = 0; n < levels; ++n) m.comp[n].assign(k->size(n), pointed_tgt->base_at(n));
    return m;
}

void sset_map_validate(const SSetMap& m, bool check_base) {
    size_t levels = m.comp.size();
    if (levels == 0) throw ValidationError("SSetMap: empty");
    for (size_t n = 0; n < levels; ++n) {
        if (m.comp[n].size() != m.src->size(n)) throw ValidationError("SSetMap: level size mismatch");
        for (int t : m.comp[n])
            if (t < 0 || t >= static_cast<int>(m.tgt->size(n)))
                throw ValidationError("SSetMap: target index out of range");
    }
    for (size_t n = 1; n < levels; ++n)
        for (size_t i = 0; i <= n; ++i)
            for (size_t s = 0; s < m.src->size(n); ++s)
                if (m.comp[n - 1][m.src->face(n, i, static_cast<int>(s))] !=
                    m.tgt->face(n, i, m.comp[n][s]))
                    throw ValidationError("SSetMap: does not commute with faces");
    for (size_t n = 0; n + 1 < levels; ++n)
        for (size_t j = 0; j <= n; ++j)
            for (size_t s = 0; s < m.src->size(n); ++s)
                if (m.comp[n + 1][m.src->degen(n, j, static_cast<int>(s))] !=
                    m.tgt->degen(n, j, m.comp[n][s]))
                    throw ValidationError("SSetMap: does not commute with degeneracies");
    if (check_base && m.src->pointed() && m.tgt->pointed() &&
        m.comp[0][m.src->basepoint()] != m.tgt->basepoint())
        throw ValidationError("SSetMap: basepoint not preserved");
}

namespace {

std::vector<std::vector<int>> monotone_tuples(size_t len, size_t maxval) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(len, 0);
    while (true) {
        out.push_back(cur);
        size_t i = len;
        while (i > 0) {
            --i;
            if (cur[i] < static_cast<int>(maxval)) {
                ++cur[i];
                for (size_t j = i + 1; j < len; ++j) cur[j] = cur[i];
                break;
            }
            if (i == 0) return out;
        }
    }
}

std::string tuple_id(const std::vector<int>& t) {
    std::string s;
    for (int v : t) s += static_cast<char>('0' + v);
    return s;
}

}  // namespace

SSetPtr delta(size_t n, size_t trunc) {
    if (n > 2) throw std::invalid_argument("delta: only dimensions 0..2 are materialized");
    if (trunc < n) throw TruncationError("delta: truncation below the simplex dimension");
    std::vector<std::vector<std::string>> ids(trunc + 1);
    std::vector<std::vector<std::vector<int>>> faces(trunc + 1), degens(trunc + 1);
    std::vector<std::vector<std::vector<int>>> tuples(trunc + 1);
    std::vector<std::map<std::string, int>> lookup(trunc + 1);
    for (size_t k = 0; k <= trunc; ++k) {
        tuples[k] = monotone_tuples(k + 1, n);
        for (size_t s = 0; s < tuples[k].size(); ++s) {
            ids[k].push_back(tuple_id(tuples[k][s]));
            lookup[k][ids[k].back()] = static_cast<int>(s);
        }
    }
    for (size_t k = 1; k <= trunc; ++k) {
        faces[k].resize(k + 1);
        for (size_t i = 0; i <= k; ++i) {
            faces[k][i].resize(tuples[k].size());
            for (size_t s = 0; s < tuples[k].size(); ++s) {
                std::vector<int> t = tuples[k][s];
                t.erase(t.begin() + static_cast<long>(i));
                faces[k][i][s] = lookup[k - 1][tuple_id(t)];
            }
        }
    }
    for (size_t k = 0; k < trunc; ++k) {
        degens[k].resize(k + 1);
        for (size_t j = 0; j <= k; ++j) {
            degens[k][j].resize(tuples[k].size());
            for (size_t s = 0; s < tuples[k].size(); ++s) {
                std::vector<int> t = tuples[k][s];
                t.insert(t.begin() + static_cast<long>(j), t[j]);
                degens[k][j][s] = lookup[k + 1][tuple_id(t)];
            }
        }
    }
    return std::make_shared<SSet>(trunc, std::move(ids), std::move(faces), std::move(degens));
}

SSetPtr interval_pointed(size_t trunc) {
    SSetPtr d1 = delta(1, trunc);
    std::vector<std::vector<std::string>> ids(trunc + 1);
    std::vector<std::vector<std::vector<int>>> faces(trunc + 1), degens(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        ids[n] = d1->ids(n);
        if (n >= 1) {
            faces[n].resize(n + 1);
            for (size_t i = 0; i <= n; ++i) {
                faces[n][i].resize(d1->size(n));
                for (size_t s = 0; s < d1->size(n); ++s)
                    faces[n][i][s] = d1->face(n, i, static_cast<int>(s));
            }
        }
        if (n < trunc) {
            degens[n].resize(n + 1);
            for (size_t j = 0; j <= n; ++j) {
                degens[n][j].resize(d1->size(n));
                for (size_t s = 0; s < d1->size(n); ++s)
                    degens[n][j][s] = d1->degen(n, j, static_cast<int>(s));
            }
        }
    }
    int base = d1->index_of(0, "0");
    return std::make_shared<SSet>(trunc, std::move(ids), std::move(faces), std::move(degens), base);
}

int ProductData::index_of_pair(size_t n, int l, int r) const {
    const auto& ps = pairs.at(n);
    for (size_t i = 0; i < ps.size(); ++i)
        if (ps[i].first == l && ps[i].second == r) return static_cast<int>(i);
    throw std::out_of_range("ProductData: pair not found");
}

ProductData sset_product(const SSetPtr& k, const SSetPtr& l) {
    size_t trunc = std::min(k->trunc(), l->trunc());
    std::vector<std::vector<std::string>> ids(trunc + 1);
    std::vector<std::vector<std::vector<int>>> faces(trunc + 1), degens(trunc + 1);
    std::vector<std::vector<std::pair<int, int>>> pairs(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        for (size_t a = 0; a < k->size(n); ++a)
            for (size_t b = 0; b < l->size(n); ++b) {
                ids[n].push_back("(" + k->id(n, static_cast<int>(a)) + "|" +
                                 l->id(n, static_cast<int>(b)) + ")");
                pairs[n].emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
    }
    auto pair_index = [&](size_t n, int a, int b) {
        return static_cast<int>(static_cast<size_t>(a) * l->size(n) + static_cast<size_t>(b));
    };
    for (size_t n = 1; n <= trunc; ++n) {
        faces[n].resize(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            faces[n][i].resize(pairs[n].size());
            for (size_t s = 0; s < pairs[n].size(); ++s)
                faces[n][i][s] = pair_index(n - 1, k->face(n, i, pairs[n][s].first),
                                            l->face(n, i, pairs[n][s].second));
        }
    }
    for (size_t n = 0; n < trunc; ++n) {
        degens[n].resize(n + 1);
        for (size_t j = 0; j <= n; ++j) {
            degens[n][j].resize(pairs[n].size());
            for (size_t s = 0; s < pairs[n].size(); ++s)
                degens[n][j][s] = pair_index(n + 1, k->degen(n, j, pairs[n][s].first),
                                             l->degen(n, j, pairs[n][s].second));
        }
    }
    std::optional<int> base;
    if (k->pointed() && l->pointed()) base = pair_index(0, k->basepoint(), l->basepoint());
    auto sset = std::make_shared<SSet>(trunc, std::move(ids), std::move(faces), std::move(degens), base);
    SSetMap prl{sset, k, {}}, prr{sset, l, {}};
    prl.comp.resize(trunc + 1);
    prr.comp.resize(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n)
        for (auto [a, b] : pairs[n]) {
            prl.comp[n].push_back(a);
            prr.comp[n].push_back(b);
        }
    return ProductData{sset, std::move(prl), std::move(prr), std::move(pairs)};
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;  // keep the smaller index as the representative
        return true;
    }
};

}  // namespace

QuotientData sset_glue(const SSetPtr& k, const std::vector<std::vector<std::pair<int, int>>>& rels,
                       std::optional<std::pair<size_t, int>> base) {
    size_t trunc = k->trunc();
    std::vector<UnionFind> uf;
    uf.reserve(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) uf.emplace_back(k->size(n));

    std::deque<std::tuple<size_t, int, int>> work;
    for (size_t n = 0; n < rels.size(); ++n)
        for (auto [a, b] : rels[n]) work.emplace_back(n, a, b);
    while (!work.empty()) {
        auto [n, a, b] = work.front();
        work.pop_front();
        if (!uf[n].unite(a, b)) continue;
        if (n >= 1)
            for (size_t i = 0; i <= n; ++i)
                work.emplace_back(n - 1, k->face(n, i, a), k->face(n, i, b));
        if (n < trunc)
            for (size_t j = 0; j <= n; ++j)
                work.emplace_back(n + 1, k->degen(n, j, a), k->degen(n, j, b));
    }

    // classes ordered by smallest member index; representative id = smallest member id
    std::vector<std::vector<int>> cls(trunc + 1);           // source -> class
    std::vector<std::vector<std::vector<int>>> members(trunc + 1);
    std::vector<std::vector<std::string>> ids(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        cls[n].assign(k->size(n), -1);
        std::map<int, std::vector<int>> groups;
        for (size_t s = 0; s < k->size(n); ++s)
            groups[uf[n].find(static_cast<int>(s))].push_back(static_cast<int>(s));
        for (auto& [root, mem] : groups) {
            int c = static_cast<int>(members[n].size());
            for (int m : mem) cls[n][m] = c;
            std::string rep = k->id(n, mem[0]);
            for (int m : mem) rep = std::min(rep, k->id(n, m));
            ids[n].push_back(mem.size() > 1 ? "[" + rep + "]" : rep);
            members[n].push_back(std::move(mem));
        }
    }

    std::vector<std::vector<std::vector<int>>> faces(trunc + 1), degens(trunc + 1);
    for (size_t n = 1; n <= trunc; ++n) {
        faces[n].resize(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            faces[n][i].resize(members[n].size());
            for (size_t c = 0; c < members[n].size(); ++c) {
                int val = cls[n - 1][k->face(n, i, members[n][c][0])];
                for (int m : members[n][c])
                    if (cls[n - 1][k->face(n, i, m)] != val)
                        throw ValidationError("sset_glue: faces not constant on classes");
                faces[n][i][c] = val;
            }
        }
    }
    for (size_t n = 0; n < trunc; ++n) {
        degens[n].resize(n + 1);
        for (size_t j = 0; j <= n; ++j) {
            degens[n][j].resize(members[n].size());
            for (size_t c = 0; c < members[n].size(); ++c) {
                int val = cls[n + 1][k->degen(n, j, members[n][c][0])];
                for (int m : members[n][c])
                    if (cls[n + 1][k->degen(n, j, m)] != val)
                        throw ValidationError("sset_glue: degeneracies not constant on classes");
                degens[n][j][c] = val;
            }
        }
    }

    std::optional<int> bp;
    if (base) bp = cls[base->first][base->second];  // base levels other than 0 are rejected below
    if (base && base->first != 0) throw std::invalid_argument("sset_glue: basepoint must live at level 0");
    auto q = std::make_shared<SSet>(trunc, std::move(ids), std::move(faces), std::move(degens), bp);
    SSetMap proj{k, q, {}};
    proj.comp = cls;
    return QuotientData{q, std::move(proj), std::move(members)};
}

QuotientData sset_quotient(const SSetPtr& k, const std::vector<std::vector<int>>& sub) {
    size_t trunc = k->trunc();
    if (sub.size() != trunc + 1) throw std::invalid_argument("sset_quotient: level count mismatch");
    // subobject check: closed under faces and degeneracies
    std::vector<std::set<int>> in(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) in[n].insert(sub[n].begin(), sub[n].end());
    for (size_t n = 0; n <= trunc; ++n)
        for (int s : sub[n]) {
            if (s < 0 || s >= static_cast<int>(k->size(n)))
                throw std::invalid_argument("sset_quotient: simplex out of range");
            if (n >= 1)
                for (size_t i = 0; i <= n; ++i)
                    if (!in[n - 1].count(k->face(n, i, s)))
                        throw ValidationError("sset_quotient: not closed under faces");
            if (n < trunc)
                for (size_t j = 0; j <= n; ++j)
                    if (!in[n + 1].count(k->degen(n, j, s)))
                        throw ValidationError("sset_quotient: not closed under degeneracies");
        }
    if (sub[0].empty()) throw std::invalid_argument("sset_quotient: subobject has no vertices");
    std::vector<std::vector<std::pair<int, int>>> rels(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n)
        for (size_t i = 1; i < sub[n].size(); ++i) rels[n].emplace_back(sub[n][0], sub[n][i]);
    return sset_glue(k, rels, std::make_pair(size_t{0}, sub[0][0]));
}

SSetMap sset_descend(const QuotientData& q, const std::vector<std::vector<int>>& raw,
                     const SSetPtr& tgt) {
    size_t levels = std::min(raw.size(), q.members.size());
    SSetMap m{q.sset, tgt, {}};
    m.comp.resize(levels);
    for (size_t n = 0; n < levels; ++n) {
        m.comp[n].resize(q.members[n].size());
        for (size_t c = 0; c < q.members[n].size(); ++c) {
            int val = raw[n][q.members[n][c][0]];
            for (int mem : q.members[n][c])
                if (raw[n][mem] != val)
                    throw ValidationError("sset_descend: assignment not constant on fibers");
            m.comp[n][c] = val;
        }
    }
    sset_map_validate(m, false);
    return m;
}

DisjointUnionData sset_disjoint_union(const SSetPtr& k, const SSetPtr& l) {
    size_t trunc = std::min(k->trunc(), l->trunc());
    std::vector<std::vector<std::string>> ids(trunc + 1);
    std::vector<std::vector<std::vector<int>>> faces(trunc + 1), degens(trunc + 1);
    std::vector<size_t> left_size(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        left_size[n] = k->size(n);
        for (size_t s = 0; s < k->size(n); ++s) ids[n].push_back("p:" + k->id(n, static_cast<int>(s)));
        for (size_t s = 0; s < l->size(n); ++s) ids[n].push_back("q:" + l->id(n, static_cast<int>(s)));
    }
    for (size_t n = 1; n <= trunc; ++n) {
        faces[n].resize(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            for (size_t s = 0; s < k->size(n); ++s)
                faces[n][i].push_back(k->face(n, i, static_cast<int>(s)));
            for (size_t s = 0; s < l->size(n); ++s)
                faces[n][i].push_back(static_cast<int>(left_size[n - 1]) +
                                      l->face(n, i, static_cast<int>(s)));
        }
    }
    for (size_t n = 0; n < trunc; ++n) {
        degens[n].resize(n + 1);
        for (size_t j = 0; j <= n; ++j) {
            for (size_t s = 0; s < k->size(n); ++s)
                degens[n][j].push_back(k->degen(n, j, static_cast<int>(s)));
            for (size_t s = 0; s < l->size(n); ++s)
                degens[n][j].push_back(static_cast<int>(left_size[n + 1]) +
                                       l->degen(n, j, static_cast<int>(s)));
        }
    }
    auto u = std::make_shared<SSet>(trunc, std::move(ids), std::move(faces), std::move(degens));
    SSetMap il{k, u, {}}, ir{l, u, {}};
    il.comp.resize(trunc + 1);
    ir.comp.resize(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        il.comp[n].resize(k->size(n));
        std::iota(il.comp[n].begin(), il.comp[n].end(), 0);
        ir.comp[n].resize(l->size(n));
        std::iota(ir.comp[n].begin(), ir.comp[n].end(), static_cast<int>(left_size[n]));
    }
    return DisjointUnionData{u, std::move(il), std::move(ir), std::move(left_size)};
}

PushoutData sset_pushout(const SSetMap& f, const SSetMap& g,
                         std::optional<std::pair<size_t, int>> base_in_left) {
    if (f.src != g.src && !(f.src->trunc() == g.src->trunc()))
        throw std::invalid_argument("sset_pushout: span sources differ");
    DisjointUnionData u = sset_disjoint_union(f.tgt, g.tgt);
    size_t trunc = u.sset->trunc();
    std::vector<std::vector<std::pair<int, int>>> rels(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n)
        for (size_t w = 0; w < f.src->size(n); ++w)
            rels[n].emplace_back(u.in_left.apply(n, f.apply(n, static_cast<int>(w))),
                                 u.in_right.apply(n, g.apply(n, static_cast<int>(w))));
    std::optional<std::pair<size_t, int>> base;
    if (base_in_left) base = std::make_pair(base_in_left->first,
                                            u.in_left.apply(base_in_left->first, base_in_left->second));
    QuotientData q = sset_glue(u.sset, rels, base);
    SSetMap from_left = sset_compose(q.projection, u.in_left);
    SSetMap from_right = sset_compose(q.projection, u.in_right);
    return PushoutData{q.sset, std::move(from_left), std::move(from_right), std::move(u), std::move(q)};
}

WedgeData sset_wedge(const SSetPtr& k, const SSetPtr& l) {
    if (!k->pointed() || !l->pointed()) throw std::invalid_argument("sset_wedge: factors must be pointed");
    DisjointUnionData u = sset_disjoint_union(k, l);
    size_t trunc = u.sset->trunc();
    std::vector<std::vector<std::pair<int, int>>> rels(trunc + 1);
    rels[0].emplace_back(u.in_left.apply(0, k->basepoint()), u.in_right.apply(0, l->basepoint()));
    QuotientData q = sset_glue(u.sset, rels, std::make_pair(size_t{0}, u.in_left.apply(0, k->basepoint())));
    SSetMap il = sset_compose(q.projection, u.in_left);
    SSetMap ir = sset_compose(q.projection, u.in_right);
    return WedgeData{q.sset, std::move(il), std::move(ir), std::move(u), std::move(q)};
}

namespace {
SSetMap wedge_project(const WedgeData& w, bool left) {
    const SSetPtr& tgt = left ? w.in_left.src : w.in_right.src;
    size_t trunc = w.sset->trunc();
    std::vector<std::vector<int>> raw(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        raw[n].resize(w.parts.sset->size(n));
        for (size_t s = 0; s < w.parts.sset->size(n); ++s) {
            bool in_left_part = s < w.parts.left_size[n];
            int local = in_left_part ? static_cast<int>(s)
                                     : static_cast<int>(s - w.parts.left_size[n]);
            if (in_left_part == left)
                raw[n][s] = local;
            else
                raw[n][s] = tgt->base_at(n);
        }
    }
    return sset_descend(w.quotient, raw, tgt);
}
}  // namespace

SSetMap wedge_project_left(const WedgeData& w) { return wedge_project(w, true); }
SSetMap wedge_project_right(const WedgeData& w) { return wedge_project(w, false); }

CircleData circle(size_t trunc) {
    if (trunc < 1) throw std::invalid_argument("circle: needs truncation >= 1");
    SSetPtr d1 = delta(1, trunc);
    std::vector<std::vector<int>> sub(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        sub[n].push_back(d1->index_of(n, std::string(n + 1, '0')));
        sub[n].push_back(d1->index_of(n, std::string(n + 1, '1')));
    }
    QuotientData q = sset_quotient(d1, sub);
    SSetMap proj = q.projection;
    return CircleData{q.sset, std::move(proj), std::move(q)};
}

SmashIntervalData smash_interval(const SSetPtr& k) {
    if (!k->pointed()) throw std::invalid_argument("smash_interval: needs a pointed set");
    SSetPtr d1 = delta(1, k->trunc());
    ProductData prod = sset_product(k, d1);
    size_t trunc = prod.sset->trunc();
    std::vector<std::vector<int>> sub(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        int base = k->base_at(n);
        for (size_t v = 0; v < d1->size(n); ++v)
            sub[n].push_back(prod.index_of_pair(n, base, static_cast<int>(v)));
    }
    QuotientData q = sset_quotient(prod.sset, sub);
    // end inclusions: x -> class of (x, const1) resp. (x, const0)
    auto end_map = [&](char digit) {
        SSetMap m{k, q.sset, {}};
        m.comp.resize(trunc + 1);
        for (size_t n = 0; n <= trunc; ++n) {
            int v = d1->index_of(n, std::string(n + 1, digit));
            m.comp[n].resize(k->size(n));
            for (size_t s = 0; s < k->size(n); ++s)
                m.comp[n][s] = q.projection.apply(n, prod.index_of_pair(n, static_cast<int>(s), v));
        }
        sset_map_validate(m, false);
        return m;
    };
    SSetMap d0 = end_map('1');  // d^0 hits vertex 1
    SSetMap d1m = end_map('0');
    return SmashIntervalData{q.sset, std::move(prod), std::move(q), std::move(d0), std::move(d1m)};
}

OmegaData omega_gadget(size_t trunc) {
    if (trunc < 2) throw std::invalid_argument("omega_gadget: needs truncation >= 2");
    SSetPtr d1 = delta(1, trunc);
    DisjointUnionData u = sset_disjoint_union(d1, d1);  // left = p copy, right = q copy
    std::vector<std::vector<std::pair<int, int>>> rels(trunc + 1);
    int v0 = d1->index_of(0, "0"), v1 = d1->index_of(0, "1");
    rels[0].emplace_back(u.in_left.apply(0, v1), u.in_right.apply(0, v0));
    rels[0].emplace_back(u.in_left.apply(0, v0), u.in_right.apply(0, v1));
    // base point: vertex 0 through the q copy
    QuotientData q = sset_glue(u.sset, rels, std::make_pair(size_t{0}, u.in_right.apply(0, v0)));
    SSetMap p_leg = sset_compose(q.projection, u.in_left);
    SSetMap q_leg = sset_compose(q.projection, u.in_right);

    CircleData s1 = circle(trunc);
    // alpha: p copy by the circle projection, q copy constant at the basepoint
    std::vector<std::vector<int>> raw_alpha(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        raw_alpha[n].resize(u.sset->size(n));
        for (size_t s = 0; s < u.sset->size(n); ++s) {
            if (s < u.left_size[n])
                raw_alpha[n][s] = s1.projection.apply(n, static_cast<int>(s));
            else
                raw_alpha[n][s] = s1.sset->base_at(n);
        }
    }
    SSetMap alpha = sset_descend(q, raw_alpha, s1.sset);

    WedgeData wedge = sset_wedge(s1.sset, s1.sset);
    // pi: q copy to the first factor, p copy to the second, both through P
    std::vector<std::vector<int>> raw_pi(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        raw_pi[n].resize(u.sset->size(n));
        for (size_t s = 0; s < u.sset->size(n); ++s) {
            if (s < u.left_size[n])
                raw_pi[n][s] = wedge.in_right.apply(n, s1.projection.apply(n, static_cast<int>(s)));
            else
                raw_pi[n][s] = wedge.in_left.apply(
                    n, s1.projection.apply(n, static_cast<int>(s - u.left_size[n])));
        }
    }
    SSetMap pi = sset_descend(q, raw_pi, wedge.sset);
    sset_map_validate(alpha, false);
    sset_map_validate(pi, false);

    PushoutData push{q.sset, p_leg, q_leg, u, q};
    return OmegaData{q.sset, std::move(push.from_left), std::move(push.from_right), std::move(push),
                     std::move(s1), std::move(alpha), std::move(wedge), std::move(pi)};
}

OmegaBarData omega_bar_gadget(size_t trunc) {
    if (trunc < 2) throw std::invalid_argument("omega_bar_gadget: needs truncation >= 2");
    SSetPtr d1 = delta(1, trunc);
    DisjointUnionData u = sset_disjoint_union(d1, d1);  // left = p bar, right = q bar
    std::vector<std::vector<std::pair<int, int>>> rels(trunc + 1);
    int v0 = d1->index_of(0, "0"), v1 = d1->index_of(0, "1");
    // glue p(d^1) = p vertex 0 with q(d^0) = q vertex 1
    rels[0].emplace_back(u.in_left.apply(0, v0), u.in_right.apply(0, v1));
    QuotientData q = sset_glue(u.sset, rels, std::make_pair(size_t{0}, u.in_right.apply(0, v0)));
    SSetMap p_leg = sset_compose(q.projection, u.in_left);
    SSetMap q_leg = sset_compose(q.projection, u.in_right);

    // alpha bar: identity on the p copy, constant vertex 0 on the q copy
    std::vector<std::vector<int>> raw_alpha(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        raw_alpha[n].resize(u.sset->size(n));
        int const0 = d1->index_of(n, std::string(n + 1, '0'));
        for (size_t s = 0; s < u.sset->size(n); ++s)
            raw_alpha[n][s] = s < u.left_size[n] ? static_cast<int>(s) : const0;
    }
    SSetMap alpha_bar = sset_descend(q, raw_alpha, d1);

    CircleData s1 = circle(trunc);
    WedgeData wedge = sset_wedge(s1.sset, interval_pointed(trunc));
    // pi bar: p copy to the interval factor, q copy to the circle factor through P
    std::vector<std::vector<int>> raw_pi(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        raw_pi[n].resize(u.sset->size(n));
        for (size_t s = 0; s < u.sset->size(n); ++s) {
            if (s < u.left_size[n])
                raw_pi[n][s] = wedge.in_right.apply(n, static_cast<int>(s));
            else
                raw_pi[n][s] = wedge.in_left.apply(
                    n, s1.projection.apply(n, static_cast<int>(s - u.left_size[n])));
        }
    }
    SSetMap pi_bar = sset_descend(q, raw_pi, wedge.sset);

    PushoutData push{q.sset, p_leg, q_leg, u, q};
    return OmegaBarData{q.sset,         std::move(push.from_left), std::move(push.from_right),
                        std::move(push), std::move(alpha_bar),      std::move(wedge),
                        std::move(pi_bar), std::move(s1)};
}

IntervalRetractions interval_retractions(size_t trunc) {
    if (trunc < 2) throw std::invalid_argument("interval_retractions: needs truncation >= 2");
    SSetPtr d1 = delta(1, trunc);
    ProductData square = sset_product(d1, d1);
    auto pointwise = [&](bool mx) {
        SSetMap m{square.sset, d1, {}};
        m.comp.resize(trunc + 1);
        for (size_t n = 0; n <= trunc; ++n) {
            m.comp[n].resize(square.pairs[n].size());
            for (size_t s = 0; s < square.pairs[n].size(); ++s) {
                const std::string& a = d1->id(n, square.pairs[n][s].first);
                const std::string& b = d1->id(n, square.pairs[n][s].second);
                std::string out(n + 1, '0');
                for (size_t i = 0; i <= n; ++i)
                    out[i] = mx ? std::max(a[i], b[i]) : std::min(a[i], b[i]);
                m.comp[n][s] = d1->index_of(n, out);
            }
        }
        sset_map_validate(m, false);
        return m;
    };
    SSetMap r_join = pointwise(true), r_meet = pointwise(false);

    // bind the unit ends by checking the boundary equations
    auto restricts_to_id = [&](const SSetMap& r, char digit, bool left_slot) {
        for (size_t n = 0; n <= trunc; ++n) {
            int cst = d1->index_of(n, std::string(n + 1, digit));
            for (size_t s = 0; s < d1->size(n); ++s) {
                int pair = left_slot ? square.index_of_pair(n, cst, static_cast<int>(s))
                                     : square.index_of_pair(n, static_cast<int>(s), cst);
                if (r.apply(n, pair) != static_cast<int>(s)) return false;
            }
        }
        return true;
    };
    // d^0 is the vertex-1 end, d^1 the vertex-0 end
    SSetMap unit_d0 = restricts_to_id(r_meet, '1', true) && restricts_to_id(r_meet, '1', false)
                          ? r_meet
                          : r_join;
    SSetMap unit_d1 = restricts_to_id(r_join, '0', true) && restricts_to_id(r_join, '0', false)
                          ? r_join
                          : r_meet;
    if (!(restricts_to_id(unit_d0, '1', true) && restricts_to_id(unit_d0, '1', false)))
        throw ValidationError("interval_retractions: no unit for the d0 end");
    if (!(restricts_to_id(unit_d1, '0', true) && restricts_to_id(unit_d1, '0', false)))
        throw ValidationError("interval_retractions: no unit for the d1 end");

    OmegaData omega = omega_gadget(trunc);
    SmashIntervalData smash = smash_interval(omega.omega);

    // H on omega x delta(1): p copy through max, q copy through min, then P;
    // this assignment is the one constant on the basepoint cylinder
    const DisjointUnionData& parts = omega.pushout.parts;
    std::vector<std::vector<int>> raw(trunc + 1);
    const auto& prod = smash.product;
    for (size_t n = 0; n <= trunc; ++n) {
        raw[n].resize(prod.pairs[n].size());
        for (size_t s = 0; s < prod.pairs[n].size(); ++s) {
            auto [c, v] = prod.pairs[n][s];
            const std::string& vb = d1->id(n, v);
            std::optional<int> val;
            for (int mem : omega.pushout.quotient.members[n][c]) {
                bool p_copy = static_cast<size_t>(mem) < parts.left_size[n];
                int local = p_copy ? mem : mem - static_cast<int>(parts.left_size[n]);
                const std::string& a = d1->id(n, local);
                std::string out(n + 1, '0');
                for (size_t i = 0; i <= n; ++i)
                    out[i] = p_copy ? std::max(a[i], vb[i]) : std::min(a[i], vb[i]);
                int img = omega.s1.projection.apply(n, d1->index_of(n, out));
                if (val && *val != img)
                    throw ValidationError("interval_retractions: homotopy ill-defined on the gluing");
                val = img;
            }
            raw[n][s] = *val;
        }
    }
    SSetMap homotopy = sset_descend(smash.quotient, raw, omega.s1.sset);

    // classify the two ends against alpha and pi1 o pi
    SSetMap pi1 = wedge_project_left(omega.wedge);
    SSetMap pi1pi = sset_compose(pi1, omega.pi);
    SSetMap h_d0 = sset_compose(homotopy, smash.d0);
    SSetMap h_d1 = sset_compose(homotopy, smash.d1);
    bool d0_alpha = h_d0 == omega.alpha && h_d1 == pi1pi;
    bool d1_alpha = h_d1 == omega.alpha && h_d0 == pi1pi;
    if (!d0_alpha && !d1_alpha)
        throw ValidationError("interval_retractions: homotopy ends do not match {alpha, pi1 pi}");

    return IntervalRetractions{std::move(square), std::move(r_join), std::move(r_meet),
                               std::move(unit_d0), std::move(unit_d1), std::move(omega),
                               std::move(smash),   std::move(homotopy), d0_alpha};
}

}  // namespace descenso
