#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "matrix.hpp"

namespace tc {

using Word = std::vector<int>;  // generator indices 1, 2, 3

inline QuadElem hermitian(const Vec3Q& a, const Vec3Q& b) {
    QuadElem s;
    for (int i = 0; i < 3; ++i) s += a[i].conj() * b[i];
    return s;
}

inline Vec3Q neg(const Vec3Q& v) { return {-v[0], -v[1], -v[2]}; }

inline std::vector<Vec3Q> build_roots() {
    const QuadElem a = QuadElem::alpha(), ab = QuadElem::alpha_bar();
    std::set<Vec3Q> out;
    auto add_signed_perms = [&](Vec3Q v) {
        std::array<int, 3> p{0, 1, 2};
        do {
            for (int s = 0; s < 8; ++s) {
                Vec3Q w;
                for (int i = 0; i < 3; ++i) w[i] = (s >> i & 1) ? -v[p[i]] : v[p[i]];
                out.insert(w);
            }
        } while (std::next_permutation(p.begin(), p.end()));
    };
    add_signed_perms({QuadElem(2), QuadElem(0), QuadElem(0)});
    add_signed_perms({QuadElem(0), a, a});
    add_signed_perms({QuadElem(1), QuadElem(1), ab});
    return {out.begin(), out.end()};
}

// z -> z - 2 <phi|z>/<phi|phi> phi
inline Mat3Q reflection(const Vec3Q& phi) {
    QuadElem nn = hermitian(phi, phi);
    QuadElem f = QuadElem(2) / nn;
    Mat3Q m = identity_fixed<QuadElem, 3>();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] -= f * phi[i] * phi[j].conj();
    return m;
}

inline Vec3Q phi1() { return {QuadElem(0), QuadElem::alpha(), -QuadElem::alpha()}; }
inline Vec3Q phi2() { return {QuadElem(0), QuadElem(0), QuadElem(2)}; }
inline Vec3Q phi3() { return {QuadElem(1), QuadElem(1), QuadElem::alpha_bar()}; }

inline std::array<Mat3Q, 3> generators() { return {reflection(phi1()), reflection(phi2()), reflection(phi3())}; }

inline Mat3Q minus(const Mat3Q& m) { return scale(QuadElem(-1), m); }

inline Mat3Q evaluate_word(const Word& w) {
    auto g = generators();
    Mat3Q m = identity_fixed<QuadElem, 3>();
    for (int j : w) m = m * g[j - 1];
    return m;
}

inline QuadElem det(const Mat3Q& m) { return det3(m); }

// signed permutation <=> all entries rational
inline bool is_real_matrix(const Mat3Q& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_real()) return false;
    return true;
}

struct ClassInfo {
    std::string name;
    Word word;     // canonical word of the representative
    int rep;       // index in Group::elems
    int size;
    bool negated;  // class of -g
};

class Group {
public:
    std::vector<Mat3Q> elems;
    std::vector<Word> words;
    std::vector<int> parent;  // BFS parent, -1 for the identity
    std::vector<int> gen;     // generator index 0..2 applied to the parent
    std::array<Mat3Q, 3> gens;

    static const Group& instance() {
        static const Group g;
        return g;
    }

    Group() : gens(generators()) {
        add(identity_fixed<QuadElem, 3>(), {}, -1, -1);
        for (std::size_t head = 0; head < elems.size(); ++head)
            for (int j = 0; j < 3; ++j) {
                Mat3Q m = elems[head] * gens[j];
                if (find(m) >= 0) continue;
                Word w = words[head];
                w.push_back(j + 1);
                add(m, w, int(head), j);
            }
        build_mult();
    }

    int size() const { return int(elems.size()); }
    int identity() const { return 0; }

    int find(const Mat3Q& m) const {
        auto it = index_.find(key(m));
        return it == index_.end() ? -1 : it->second;
    }
    int index_of(const Mat3Q& m) const {
        int i = find(m);
        if (i < 0) throw std::invalid_argument("matrix is not an element of G");
        return i;
    }
    const Word& word_for(const Mat3Q& m) const { return words[index_of(m)]; }

    int mul(int a, int b) const { return mult_[std::size_t(a) * elems.size() + b]; }
    int inv(int a) const { return inv_[a]; }
    int neg(int a) const { return neg_[a]; }
    int minus_identity() const { return neg_[0]; }

    int order(int a) const {
        int o = 1, x = a;
        while (x != 0) {
            x = mul(x, a);
            ++o;
        }
        return o;
    }

    std::size_t max_word_length() const {
        std::size_t m = 0;
        for (const auto& w : words) m = std::max(m, w.size());
        return m;
    }

    bool is_in_W(int a) const { return is_real_matrix(elems[a]); }
    bool is_in_H(int a) const { return det(elems[a]) == QuadElem(1); }

    // class representatives in the fixed order g1,-g1,g2,-g2,g3,-g3,g4,-g4,g7,-g7,g7^-1,-g7^-1
    std::vector<ClassInfo> conjugacy_classes() const {
        auto g = gens;
        Mat3Q r1 = g[0], r2 = g[1], r3 = g[2];
        Mat3Q rho1 = minus(r1), rho2 = minus(r2), rho3 = minus(r3);
        Mat3Q g1 = identity_fixed<QuadElem, 3>();
        Mat3Q g2 = rho1;
        Mat3Q g3 = rho1 * rho3 * rho1 * rho2;
        Mat3Q g4 = rho1 * rho2;
        Mat3Q g7 = rho1 * rho2 * rho3;
        Mat3Q g7i = inverse3(g7);
        std::vector<std::pair<std::string, Mat3Q>> reps = {
            {"g1", g1}, {"-g1", minus(g1)}, {"g2", g2}, {"-g2", minus(g2)},   {"g3", g3},     {"-g3", minus(g3)},
            {"g4", g4}, {"-g4", minus(g4)}, {"g7", g7}, {"-g7", minus(g7)}, {"g7^-1", g7i}, {"-g7^-1", minus(g7i)}};
        std::vector<ClassInfo> out;
        for (auto& [name, m] : reps) {
            int idx = index_of(m);
            out.push_back({name, words[idx], idx, int(class_of(idx).size()), name[0] == '-'});
        }
        return out;
    }

    std::vector<int> class_of(int a) const {
        std::vector<int> cls;
        for (int x = 0; x < size(); ++x) cls.push_back(mul(mul(x, a), inv(x)));
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        return cls;
    }

    // all classes, as a partition of the group
    std::vector<std::vector<int>> all_classes() const {
        std::vector<int> seen(size(), 0);
        std::vector<std::vector<int>> out;
        for (int a = 0; a < size(); ++a) {
            if (seen[a]) continue;
            auto c = class_of(a);
            for (int x : c) seen[x] = 1;
            out.push_back(c);
        }
        return out;
    }

private:
    static std::vector<long long> key(const Mat3Q& m) {
        std::vector<long long> k;
        k.reserve(18);
        for (const auto& row : m)
            for (const auto& x : row) {
                Rational a = x.x * Rational(2), b = x.y * Rational(2);
                if (!a.is_integer() || !b.is_integer()) throw std::domain_error("entry outside (1/2)Z[alpha]");
                k.push_back(a.to_int64());
                k.push_back(b.to_int64());
            }
        return k;
    }

    void add(const Mat3Q& m, Word w, int par, int g) {
        index_[key(m)] = int(elems.size());
        elems.push_back(m);
        words.push_back(std::move(w));
        parent.push_back(par);
        gen.push_back(g);
    }

    void build_mult() {
        std::size_t n = elems.size();
        mult_.assign(n * n, -1);
        // right multiplication by generators, then extend along words
        std::vector<std::array<int, 3>> right(n);
        for (std::size_t a = 0; a < n; ++a)
            for (int j = 0; j < 3; ++j) right[a][j] = index_of(elems[a] * gens[j]);
        for (std::size_t a = 0; a < n; ++a) {
            mult_[a * n] = int(a);
            for (std::size_t b = 1; b < n; ++b) mult_[a * n + b] = right[mult_[a * n + parent[b]]][gen[b]];
        }
        inv_.assign(n, -1);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (mult_[a * n + b] == 0) inv_[a] = int(b);
        int mi = index_of(minus(identity_fixed<QuadElem, 3>()));
        neg_.assign(n, -1);
        for (std::size_t a = 0; a < n; ++a) neg_[a] = mult_[a * n + mi];
    }

    std::map<std::vector<long long>, int> index_;
    std::vector<int> mult_, inv_, neg_;
};

struct RelationResult {
    std::string name;
    bool holds;
};

inline std::vector<RelationResult> verify_relations() {
    auto g = generators();
    Mat3Q I = identity_fixed<QuadElem, 3>();
    auto pw = [](Mat3Q m, int e) {
        Mat3Q r = identity_fixed<QuadElem, 3>();
        for (int i = 0; i < e; ++i) r = r * m;
        return r;
    };
    Mat3Q r1 = g[0], r2 = g[1], r3 = g[2];
    return {
        {"r1^2", pw(r1, 2) == I},
        {"r2^2", pw(r2, 2) == I},
        {"r3^2", pw(r3, 2) == I},
        {"(r1r2)^4", pw(r1 * r2, 4) == I},
        {"(r2r3)^4", pw(r2 * r3, 4) == I},
        {"(r3r1)^3", pw(r3 * r1, 3) == I},
        {"(r1r2r1r3)^3", pw(r1 * r2 * r1 * r3, 3) == I},
    };
}

// G as the union of the cosets g7^i W, i = 0..6
inline std::set<int> coset_union(const Group& G) {
    Mat3Q g7 = minus(G.gens[0] * G.gens[1] * G.gens[2]);
    int g7i = G.index_of(g7);
    std::vector<int> W;
    for (int a = 0; a < G.size(); ++a)
        if (G.is_in_W(a)) W.push_back(a);
    std::set<int> out;
    int p = 0;
    for (int i = 0; i < 7; ++i) {
        for (int w : W) out.insert(G.mul(p, w));
        p = G.mul(p, g7i);
    }
    return out;
}

inline bool permutes_roots(const Mat3Q& g, const std::vector<Vec3Q>& roots) {
    std::set<Vec3Q> R(roots.begin(), roots.end());
    for (const auto& r : roots)
        if (!R.count(g * r)) return false;
    return true;
}

}  // namespace tc
