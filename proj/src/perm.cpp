#include "opbim/perm.hpp"

#include <algorithm>
#include <numeric>

#include "opbim/errors.hpp"

namespace opbim {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
        if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[v])
            throw InputError("not a permutation: " + to_string(*this));
        seen[v] = 1;
    }
}

Perm Perm::identity(std::size_t n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    Perm p;
    p.images_ = std::move(img);
    return p;
}

Perm Perm::adjacent(std::size_t n, std::size_t i) {
    Perm p = identity(n);
    std::swap(p.images_[i], p.images_[i + 1]);
    return p;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != static_cast<int>(i)) return false;
    return true;
}

Perm Perm::inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
    Perm p;
    p.images_ = std::move(inv);
    return p;
}

Perm compose(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree()) throw InputError("compose: degree mismatch");
    std::vector<int> img(p.degree());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = p(q(i));
    return Perm(std::move(img));
}

Perm direct_sum(const Perm& p, const Perm& q) {
    std::vector<int> img = p.images();
    const int off = static_cast<int>(p.degree());
    for (int v : q.images()) img.push_back(v + off);
    return Perm(std::move(img));
}

Perm direct_sum(std::span<const Perm> parts) {
    std::vector<int> img;
    int off = 0;
    for (const Perm& p : parts) {
        for (int v : p.images()) img.push_back(v + off);
        off += static_cast<int>(p.degree());
    }
    return Perm(std::move(img));
}

Perm block_permutation(std::span<const std::size_t> lengths, const Perm& pi) {
    if (pi.degree() != lengths.size()) throw InputError("block_permutation: arity mismatch");
    std::vector<std::size_t> offset(lengths.size() + 1, 0);
    for (std::size_t i = 0; i < lengths.size(); ++i) offset[i + 1] = offset[i] + lengths[i];
    std::vector<int> img;
    img.reserve(offset.back());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const std::size_t src = static_cast<std::size_t>(pi(i));
        for (std::size_t r = 0; r < lengths[src]; ++r) img.push_back(static_cast<int>(offset[src] + r));
    }
    return Perm(std::move(img));
}

Word apply_arrow(const Word& a, const Perm& sigma) {
    if (a.size() != sigma.degree()) throw InputError("apply_arrow: length mismatch");
    Word b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = a[sigma(i)];
    return b;
}

bool is_arrow(const Word& a, const Word& b, const Perm& sigma) {
    if (a.size() != b.size() || sigma.degree() != a.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != a[sigma(i)]) return false;
    return true;
}

CanonicalForm canonical_word(const Word& w) {
    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return w[x] < w[y]; });
    CanonicalForm out;
    out.word.resize(w.size());
    std::vector<int> rank(w.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.word[k] = w[order[k]];
        rank[order[k]] = static_cast<int>(k);
    }
    out.transport = Perm(std::move(rank));
    return out;
}

bool is_canonical(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

Word concat(std::span<const Word> parts) {
    Word out;
    for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<Perm> all_permutations(std::size_t n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Perm> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

namespace {

void arrows_rec(const Word& a, const Word& b, std::size_t i, std::vector<int>& img,
                std::vector<char>& used, std::vector<Perm>& out) {
    if (i == b.size()) {
        out.emplace_back(img);
        return;
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (used[j] || a[j] != b[i]) continue;
        used[j] = 1;
        img[i] = static_cast<int>(j);
        arrows_rec(a, b, i + 1, img, used, out);
        used[j] = 0;
    }
}

}  // namespace

std::vector<Perm> all_arrows(const Word& a, const Word& b) {
    std::vector<Perm> out;
    if (a.size() != b.size()) return out;
    std::vector<int> img(a.size());
    std::vector<char> used(a.size(), 0);
    arrows_rec(a, b, 0, img, used, out);
    return out;
}

std::vector<std::size_t> young_generators(const Word& w) {
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1]) gens.push_back(i);
    return gens;
}

std::vector<Perm> stabilizer(const Word& w) { return all_arrows(w, w); }

std::uint64_t factorial(unsigned n) {
    std::uint64_t r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

std::string to_string(const Perm& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.degree(); ++i) {
        if (i) s += ' ';
        s += std::to_string(p(i));
    }
    return s + "]";
}

std::string to_string(const Word& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s + ")";
}

}  // namespace opbim
