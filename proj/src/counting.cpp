#include "qcycle/counting.hpp"

#include "qcycle/matrix.hpp"

#include <atomic>
#include <cstdint>
#include <future>
#include <map>
#include <thread>

namespace qcycle {

namespace {

Int int_pow(const Int& b, long e) {
    Int r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

long long to_ll(const Int& x) { return x.convert_to<long long>(); }

struct Shape {
    int m, n, t;
    long long M;                  // p^t
    long long p;
    std::vector<long long> s;    // m*m, entries in [0, M)
    std::vector<long long> tt;   // n*n, entries in [0, M)
};

void check_symmetric(const IntMat& a, const char* name) {
    const size_t k = a.size();
    if (k == 0) throw std::invalid_argument(std::string(name) + " is empty");
    for (size_t i = 0; i < k; ++i) {
        if (a[i].size() != k) throw std::invalid_argument(std::string(name) + " is not square");
        for (size_t j = 0; j < k; ++j)
            if (a[i][j] != a[j][i])
                throw std::invalid_argument(std::string(name) + " is not symmetric");
    }
    RatMat r(k, std::vector<Rat>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) r[i][j] = Rat(a[i][j]);
    if (det(r) == 0) throw std::invalid_argument(std::string(name) + " is degenerate");
}

Shape make_shape(const CountJob& job) {
    if (job.t < 1) throw std::invalid_argument("need t >= 1");
    if (job.p < 3 || job.p % 2 == 0) throw std::invalid_argument("p must be an odd prime");
    check_symmetric(job.s, "S");
    check_symmetric(job.target, "T");
    Shape sh;
    sh.m = static_cast<int>(job.s.size());
    sh.n = static_cast<int>(job.target.size());
    sh.t = job.t;
    if (sh.n > sh.m) throw std::invalid_argument("need n <= m");
    const Int modulus = int_pow(job.p, job.t);
    if (modulus > Int(1) << 31) throw std::invalid_argument("p^t exceeds machine-word range");
    sh.M = to_ll(modulus);
    sh.p = to_ll(job.p);
    sh.s.resize(sh.m * sh.m);
    for (int i = 0; i < sh.m; ++i)
        for (int j = 0; j < sh.m; ++j)
            sh.s[i * sh.m + j] = to_ll(mod_reduce(job.s[i][j], modulus));
    sh.tt.resize(sh.n * sh.n);
    for (int i = 0; i < sh.n; ++i)
        for (int j = 0; j < sh.n; ++j)
            sh.tt[i * sh.n + j] = to_ll(mod_reduce(job.target[i][j], modulus));
    return sh;
}

long normalization_exponent(int m, int n, int t) {
    return static_cast<long>(t) * n * (2L * m - n - 1) / 2;
}

CountResult finish(const Shape& sh, const Int& p, Int raw) {
    CountResult r;
    r.t = sh.t;
    const long e = normalization_exponent(sh.m, sh.n, sh.t);
    r.normalized = e >= 0 ? Rat(raw) / Rat(int_pow(p, e)) : Rat(raw) * Rat(int_pow(p, -e));
    r.raw = std::move(raw);
    return r;
}

// x^T S y mod M given sx = S x reduced mod M
long long dot_row(const long long* sx, const int32_t* y, int m, long long M) {
    long long acc = 0;
    for (int i = 0; i < m; ++i) acc += sx[i] * y[i] % M;
    return acc % M;
}

std::vector<long long> s_row(const Shape& sh, const int32_t* x) {
    std::vector<long long> r(sh.m);
    for (int i = 0; i < sh.m; ++i) {
        long long acc = 0;
        for (int j = 0; j < sh.m; ++j) acc += sh.s[i * sh.m + j] * x[j] % sh.M;
        r[i] = acc % sh.M;
    }
    return r;
}

long long q_value(const Shape& sh, const int32_t* x) {
    long long acc = 0;
    for (int i = 0; i < sh.m; ++i) {
        long long row = 0;
        for (int j = 0; j < sh.m; ++j) row += sh.s[i * sh.m + j] * x[j] % sh.M;
        acc += row % sh.M * x[i] % sh.M;
    }
    return acc % sh.M;
}

// visit every vector in (Z/M)^m
template <class F>
void for_each_vector(int m, long long M, F&& visit) {
    std::vector<int32_t> x(m, 0);
    for (;;) {
        visit(x.data());
        int i = 0;
        while (i < m && ++x[i] == M) x[i++] = 0;
        if (i == m) break;
    }
}

struct Budget {
    long long limit;
    std::atomic<long long> used{0};

    explicit Budget(const Int& b)
        : limit(b > Int("4000000000000000000") ? 4000000000000000000LL : to_ll(b)) {}
    void charge(long long c) {
        if ((used += c) > limit) throw BudgetExceeded(Int(used.load()));
    }
};

using FlatList = std::vector<int32_t>;  // packed vectors, stride m

// candidates for each column value T_kk, shared between equal diagonal entries
std::vector<const FlatList*> column_lists(const Shape& sh, std::map<long long, FlatList>& store) {
    for (int k = 0; k < sh.n; ++k) store.emplace(sh.tt[k * sh.n + k], FlatList{});
    for_each_vector(sh.m, sh.M, [&](const int32_t* x) {
        auto it = store.find(q_value(sh, x));
        if (it != store.end()) it->second.insert(it->second.end(), x, x + sh.m);
    });
    std::vector<const FlatList*> lists(sh.n);
    for (int k = 0; k < sh.n; ++k) lists[k] = &store.at(sh.tt[k * sh.n + k]);
    return lists;
}

// completes columns k..n-1; cands[j-k] holds the surviving candidates for column j
Int extend(const Shape& sh, Budget& budget, int k, const std::vector<FlatList>& cands) {
    const int m = sh.m;
    if (k == sh.n) return 1;
    Int total = 0;
    const FlatList& own = cands[0];
    for (size_t off = 0; off < own.size(); off += m) {
        const int32_t* x = own.data() + off;
        const std::vector<long long> sx = s_row(sh, x);
        long long cost = m * m;
        std::vector<FlatList> next(sh.n - k - 1);
        for (int j = k + 1; j < sh.n; ++j) {
            const FlatList& src = cands[j - k];
            const long long want = sh.tt[k * sh.n + j];
            FlatList& dst = next[j - k - 1];
            for (size_t o2 = 0; o2 < src.size(); o2 += m) {
                const int32_t* y = src.data() + o2;
                if (dot_row(sx.data(), y, m, sh.M) == want) dst.insert(dst.end(), y, y + m);
            }
            cost += static_cast<long long>(src.size()) / m + 1;
        }
        budget.charge(cost);
        total += extend(sh, budget, k + 1, next);
    }
    return total;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

long content_valuation(const int32_t* x, int m, long long p, int t) {
    long a = t;
    for (int i = 0; i < m; ++i) {
        long long v = x[i];
        long av = 0;
        if (v == 0) continue;
        while (v % p == 0) {
            v /= p;
            ++av;
        }
        a = std::min(a, av);
        if (a == 0) break;
    }
    return a;
}

}  // namespace

Int estimate_ops(const CountJob& job) {
    const int m = static_cast<int>(job.s.size());
    const int n = static_cast<int>(job.target.size());
    Int est = Int(n) * int_pow(job.p, static_cast<long>(m) * job.t);
    if (n >= 2) est += int_pow(job.p, static_cast<long>(2 * m - 1) * job.t);
    if (n >= 3) est += int_pow(job.p, static_cast<long>(3 * m - 3) * job.t);
    return est;
}

CountResult count_generic(const CountJob& job) {
    const Shape sh = make_shape(job);
    const Int est = estimate_ops(job);
    if (est > job.budget) throw BudgetExceeded(est);
    Budget budget(job.budget);

    std::map<long long, FlatList> store;
    const std::vector<const FlatList*> lists = column_lists(sh, store);
    budget.charge(static_cast<long long>(sh.n));

    const FlatList& top = *lists[0];
    const size_t vecs = top.size() / sh.m;
    const int threads = std::min<int>(resolve_threads(job.threads),
                                      std::max<size_t>(vecs, 1));

    auto run_range = [&](size_t lo, size_t hi) {
        std::vector<FlatList> cands(sh.n);
        cands[0].assign(top.begin() + lo * sh.m, top.begin() + hi * sh.m);
        for (int j = 1; j < sh.n; ++j) cands[j] = *lists[j];
        return extend(sh, budget, 0, cands);
    };

    Int raw = 0;
    if (threads <= 1 || vecs == 0) {
        raw = vecs == 0 ? Int(0) : run_range(0, vecs);
    } else {
        std::vector<std::future<Int>> parts;
        for (int c = 0; c < threads; ++c) {
            const size_t lo = vecs * c / threads, hi = vecs * (c + 1) / threads;
            parts.push_back(std::async(std::launch::async, run_range, lo, hi));
        }
        for (auto& f : parts) raw += f.get();
    }
    return finish(sh, job.p, raw);
}

bool orbit_path_applicable(const CountJob& job) {
    if (job.target.size() != 3 || job.s.size() < 3) return false;
    if (job.p < 3 || job.p % 2 == 0) return false;
    for (size_t i = 0; i < job.target.size(); ++i)
        for (size_t j = 0; j < job.target.size(); ++j)
            if (i != j && job.target[i][j] != 0) return false;
    for (size_t i = 0; i < job.s.size(); ++i)
        for (size_t j = 0; j < job.s.size(); ++j) {
            if (i != j && job.s[i][j] != 0) return false;
            if (i == j && job.s[i][j] % job.p == 0) return false;
        }
    return true;
}

CountResult count_orbit(const CountJob& job) {
    if (!orbit_path_applicable(job))
        throw std::invalid_argument("orbit reduction needs diagonal T (n=3) and diagonal unit S");
    const Shape sh = make_shape(job);
    const int m = sh.m;
    const long long M = sh.M;
    const Int scan_est = Int(3) * m * int_pow(job.p, static_cast<long>(m) * sh.t);
    if (scan_est > job.budget) throw BudgetExceeded(scan_est);
    Budget budget(job.budget);

    const long long t11 = sh.tt[0], t22 = sh.tt[4], t33 = sh.tt[8];

    // column-1 isometry classes: content a and the scaled value mod p^{t-a}
    struct ClassInfo {
        Int size = 0;
        std::vector<int32_t> rep;
    };
    std::map<std::pair<long, long long>, ClassInfo> classes;
    FlatList list2, list3_own;
    const bool share23 = t22 == t33;

    std::vector<long long> pow_p(sh.t + 1, 1);
    for (int i = 1; i <= sh.t; ++i) pow_p[i] = pow_p[i - 1] * sh.p;

    for_each_vector(m, M, [&](const int32_t* x) {
        const long long q = q_value(sh, x);
        if (q == t11) {
            const long a = content_valuation(x, m, sh.p, sh.t);
            const long long mu = pow_p[sh.t - a];
            long long qu = 0;
            for (int i = 0; i < m; ++i) {
                const long long u = (x[i] / pow_p[a]) % mu;
                qu += sh.s[i * m + i] * u % mu * u % mu;
            }
            ClassInfo& c = classes[{a, qu % mu}];
            if (c.size == 0) c.rep.assign(x, x + m);
            ++c.size;
        }
        if (q == t22) list2.insert(list2.end(), x, x + m);
        if (!share23 && q == t33) list3_own.insert(list3_own.end(), x, x + m);
    });
    budget.charge(3LL * m * to_ll(int_pow(job.p, static_cast<long>(m) * sh.t)));
    const FlatList& list3 = share23 ? list2 : list3_own;

    Int raw = 0;
    for (const auto& [key, cls] : classes) {
        const std::vector<long long> srep = s_row(sh, cls.rep.data());
        // second columns paired with the representative, stored as S y rows
        std::vector<long long> k2;
        for (size_t off = 0; off < list2.size(); off += m) {
            const int32_t* y = list2.data() + off;
            if (dot_row(srep.data(), y, m, M) == sh.tt[1]) {
                const std::vector<long long> sy = s_row(sh, y);
                k2.insert(k2.end(), sy.begin(), sy.end());
            }
        }
        FlatList k3;
        for (size_t off = 0; off < list3.size(); off += m) {
            const int32_t* z = list3.data() + off;
            if (dot_row(srep.data(), z, m, M) == sh.tt[2]) k3.insert(k3.end(), z, z + m);
        }
        budget.charge(static_cast<long long>(list2.size() + list3.size()) / m + 1);

        long long pairs = 0;
        const long long want = sh.tt[5];
        for (size_t o2 = 0; o2 < k2.size(); o2 += m) {
            const long long* sy = k2.data() + o2;
            for (size_t o3 = 0; o3 < k3.size(); o3 += m)
                if (dot_row(sy, k3.data() + o3, m, M) == want) ++pairs;
            budget.charge(static_cast<long long>(k3.size()) / m + 1);
        }
        raw += cls.size * pairs;
    }
    return finish(sh, job.p, raw);
}

CountResult count_naive(const CountJob& job) {
    const Shape sh = make_shape(job);
    const Int est = int_pow(job.p, static_cast<long>(sh.m) * sh.n * sh.t) * (sh.m * sh.n);
    if (est > job.budget || est > Int("2000000000")) throw BudgetExceeded(est);

    Int raw = 0;
    std::vector<int32_t> mat(sh.m * sh.n, 0);  // column-major
    for (;;) {
        bool ok = true;
        for (int i = 0; i < sh.n && ok; ++i) {
            const std::vector<long long> sx = s_row(sh, mat.data() + i * sh.m);
            for (int j = i; j < sh.n && ok; ++j)
                ok = dot_row(sx.data(), mat.data() + j * sh.m, sh.m, sh.M) ==
                     sh.tt[i * sh.n + j];
        }
        if (ok) ++raw;
        size_t i = 0;
        while (i < mat.size() && ++mat[i] == sh.M) mat[i++] = 0;
        if (i == mat.size()) break;
    }
    return finish(sh, job.p, raw);
}

CountResult count(const CountJob& job) {
    return orbit_path_applicable(job) ? count_orbit(job) : count_generic(job);
}

StabilizedDensity stabilized_density(const CountJob& base, int t_min, int t_max) {
    if (t_min < 1 || t_max < t_min + 1)
        throw std::invalid_argument("need 1 <= t_min < t_max");
    Rat prev, last;
    for (int t = t_min; t <= t_max; ++t) {
        CountJob job = base;
        job.t = t;
        prev = last;
        last = count(job).normalized;
    }
    if (prev != last) throw NotStabilized(prev, last);
    return StabilizedDensity{last, t_max};
}

}  // namespace qcycle
