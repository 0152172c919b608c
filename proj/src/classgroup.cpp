#include "mdv/classgroup.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace mdv {

namespace {

constexpr long kMaxAbsDisc = 10000000;

BigInt fdiv_q(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt cdiv_q(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool primitive(const QuadForm& f) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), f.a.get_mpz_t(), f.b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.c.get_mpz_t());
    return g == 1;
}

void check_form(const QuadForm& f) {
    BigInt d = f.disc();
    if (d == 0) throw usage_error("form: zero discriminant");
    unsigned long m4 = mpz_fdiv_ui(d.get_mpz_t(), 4);
    if (m4 != 0 && m4 != 1) throw usage_error("form: discriminant must be 0 or 1 mod 4");
    if (d > 0 && is_perfect_square(d)) throw usage_error("form: square discriminant unsupported");
    if (d < 0 && f.a < 0) throw usage_error("form: negative definite form");
    if (!primitive(f)) throw usage_error("form: not primitive");
}

QuadForm reduce_definite(QuadForm f) {
    const BigInt D = f.disc();
    auto normalize = [&] {
        // bring b into (-a, a]
        BigInt q = fdiv_q(f.a - f.b, 2 * f.a);
        f.b += 2 * f.a * q;
        f.c = (f.b * f.b - D) / (4 * f.a);
    };
    normalize();
    while (f.a > f.c) {
        f = QuadForm{f.c, -f.b, f.a};
        normalize();
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

bool reduced_indefinite(const QuadForm& f, const BigInt& s) {
    if (f.b < 1 || f.b > s) return false;
    BigInt two_abs_a = 2 * abs(f.a);
    // With D nonsquare and s = floor(sqrt(D)), the real inequalities
    // sqrt(D) - b < 2|a| < sqrt(D) + b become the integer ones below.
    return s < two_abs_a + f.b && two_abs_a - f.b <= s;
}

QuadForm rho_step(const QuadForm& f, const BigInt& D, const BigInt& s) {
    BigInt abs_c = abs(f.c);
    BigInt modulus = 2 * abs_c;
    BigInt hi = abs_c > s ? abs_c : s;
    // largest r <= hi with r = -b mod 2|c|
    BigInt m;
    BigInt hb = hi + f.b;
    mpz_fdiv_r(m.get_mpz_t(), hb.get_mpz_t(), modulus.get_mpz_t());
    BigInt r = hi - m;
    BigInt num = r * r - D;
    BigInt four_c = 4 * f.c;
    MDV_CHECK(mpz_divisible_p(num.get_mpz_t(), four_c.get_mpz_t()));
    return QuadForm{f.c, r, num / four_c};
}

QuadForm reduce_indefinite(QuadForm f, const BigInt& D) {
    const BigInt s = isqrt(D);
    for (int i = 0; i < 100000; ++i) {
        if (reduced_indefinite(f, s)) return f;
        f = rho_step(f, D, s);
    }
    throw internal_error("indefinite reduction did not converge");
}

// Finite abelian group presented by index arithmetic.
struct GroupOps {
    int n = 0;
    int id = 0;
    std::function<int(int, int)> mul;
};

int ops_pow(const GroupOps& g, int x, long e) {
    int acc = g.id;
    int base = x;
    while (e > 0) {
        if (e & 1) acc = g.mul(acc, base);
        base = g.mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::vector<long> sorted_divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        if (d != n / d) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ord(x) = least divisor k of |G| with x^k = id.
long element_order(const GroupOps& g, int x, const std::vector<long>& group_divisors) {
    for (long k : group_divisors) {
        if (ops_pow(g, x, k) == g.id) return k;
    }
    throw internal_error("element order not found (group law broken)");
}

// Invariant factors, ascending (each divides the next). Greedy basis build:
// the largest factor is the group exponent, realized by an element of
// maximal order; recurse on the quotient by picking maximal coset orders.
std::vector<BigInt> abelian_invariant_factors(const GroupOps& g) {
    if (g.n <= 1) return {};
    auto group_divisors = sorted_divisors(g.n);
    std::vector<long> ord(g.n);
    for (int x = 0; x < g.n; ++x) ord[x] = element_order(g, x, group_divisors);

    std::unordered_set<int> sub{g.id};
    std::vector<BigInt> factors;
    while (static_cast<long>(sub.size()) < g.n) {
        long best_order = 0;
        int best_x = -1;
        for (int x = 0; x < g.n; ++x) {
            if (sub.count(x)) continue;
            long q = 0;
            for (long k : sorted_divisors(ord[x])) {
                if (sub.count(ops_pow(g, x, k))) {
                    q = k;
                    break;
                }
            }
            MDV_CHECK(q > 1);
            if (q > best_order) {
                best_order = q;
                best_x = x;
            }
        }
        MDV_CHECK(best_x >= 0);
        factors.emplace_back(best_order);
        std::vector<int> base(sub.begin(), sub.end());
        std::size_t expected = sub.size() * best_order;
        int p = best_x;
        for (long j = 1; j < best_order; ++j) {
            for (int h : base) sub.insert(g.mul(p, h));
            p = g.mul(p, best_x);
        }
        MDV_CHECK(sub.size() == expected);
    }
    // Greedy emits the chain largest-first.
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
        MDV_CHECK(mpz_divisible_p(factors[i].get_mpz_t(), factors[i + 1].get_mpz_t()));
    std::reverse(factors.begin(), factors.end());
    return factors;
}

int count_cube_roots_of_identity(const GroupOps& g) {
    int count = 0;
    for (int x = 0; x < g.n; ++x) {
        if (g.mul(g.mul(x, x), x) == g.id) ++count;
    }
    return count;
}

} // namespace

QuadForm principal_form(const BigInt& disc) {
    if (disc == 0) throw usage_error("principal_form: zero discriminant");
    BigInt b = BigInt(mpz_fdiv_ui(disc.get_mpz_t(), 2));
    return QuadForm{1, b, (b * b - disc) / 4};
}

bool is_reduced(const QuadForm& f) {
    BigInt d = f.disc();
    if (d < 0) {
        if (f.a <= 0) return false;
        if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) return false;
        if (f.a == f.c && f.b < 0) return false;
        return true;
    }
    return reduced_indefinite(f, isqrt(d));
}

QuadForm reduce(const QuadForm& f) {
    check_form(f);
    BigInt d = f.disc();
    return d < 0 ? reduce_definite(f) : reduce_indefinite(f, d);
}

QuadForm rho(const QuadForm& f) {
    check_form(f);
    BigInt d = f.disc();
    if (d < 0) throw usage_error("rho: defined for indefinite forms only");
    return rho_step(f, d, isqrt(d));
}

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    check_form(f1);
    check_form(f2);
    const BigInt D = f1.disc();
    if (D != f2.disc()) throw usage_error("compose: discriminant mismatch");

    BigInt s = (f1.b + f2.b) / 2;
    BigInt g, u0, v0;
    mpz_gcdext(g.get_mpz_t(), u0.get_mpz_t(), v0.get_mpz_t(), f1.a.get_mpz_t(),
               f2.a.get_mpz_t());
    BigInt d, v1, w;
    mpz_gcdext(d.get_mpz_t(), v1.get_mpz_t(), w.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());

    BigInt a2d = f2.a / d;
    BigInt big_a = (f1.a / d) * a2d;
    BigInt big_b = f2.b + 2 * a2d * ((s - f2.b) * (v0 * v1) - w * f2.c);
    BigInt num = big_b * big_b - D;
    BigInt four_a = 4 * big_a;
    MDV_CHECK(mpz_divisible_p(num.get_mpz_t(), four_a.get_mpz_t()));
    QuadForm out{big_a, big_b, num / four_a};
    MDV_CHECK(out.disc() == D);
    MDV_CHECK(primitive(out));
    return reduce(out);
}

QuadForm inverse_form(const QuadForm& f) {
    return reduce(QuadForm{f.a, -f.b, f.c});
}

ClassGroup ClassGroup::build(const BigInt& disc) {
    if (disc == 0 || disc == 1 || !is_fundamental(disc))
        throw usage_error("class group: discriminant must be fundamental");
    if (abs(disc) > kMaxAbsDisc)
        throw usage_error("class group: discriminant exceeds configured bound");

    ClassGroup cg;
    cg.disc_ = disc;
    cg.definite_ = disc < 0;
    const BigInt parity = BigInt(mpz_fdiv_ui(disc.get_mpz_t(), 2));

    if (cg.definite_) {
        BigInt amax = isqrt(abs(disc) / 3);
        for (BigInt a = 1; a <= amax; ++a) {
            for (BigInt b = parity; b <= a; b += 2) {
                BigInt num = b * b - disc;
                BigInt four_a = 4 * a;
                if (!mpz_divisible_p(num.get_mpz_t(), four_a.get_mpz_t())) continue;
                BigInt c = num / four_a;
                if (c < a) continue;
                QuadForm f{a, b, c};
                MDV_CHECK(primitive(f));
                cg.reduced_.push_back(f);
                if (b != 0 && b != a && a != c) cg.reduced_.push_back(QuadForm{a, -b, c});
            }
        }
        std::sort(cg.reduced_.begin(), cg.reduced_.end());
        cg.reps_ = cg.reduced_;
        for (int i = 0; i < static_cast<int>(cg.reps_.size()); ++i)
            cg.class_index_[cg.reps_[i]] = i;
    } else {
        const BigInt s = isqrt(disc);
        for (BigInt b = (parity == 0 ? BigInt(2) : BigInt(1)); b <= s; b += 2) {
            BigInt p = (disc - b * b) / 4;
            BigInt lo = cdiv_q(s + 1 - b, 2);
            if (lo < 1) lo = 1;
            BigInt hi = fdiv_q(s + b, 2);
            for (BigInt e = 1; e * e <= p; ++e) {
                if (!mpz_divisible_p(p.get_mpz_t(), e.get_mpz_t())) continue;
                BigInt co = p / e;
                int distinct = (e == co) ? 1 : 2;
                for (int which = 0; which < distinct; ++which) {
                    const BigInt& dv = (which == 0) ? e : co;
                    if (dv < lo || dv > hi) continue;
                    QuadForm f{dv, b, -(p / dv)};
                    MDV_CHECK(primitive(f));
                    cg.reduced_.push_back(f);
                    cg.reduced_.push_back(QuadForm{-dv, b, p / dv});
                }
            }
        }
        std::sort(cg.reduced_.begin(), cg.reduced_.end());
        cg.reduced_.erase(std::unique(cg.reduced_.begin(), cg.reduced_.end()),
                          cg.reduced_.end());

        // Partition into rho-cycles; one narrow class per cycle.
        for (const QuadForm& start : cg.reduced_) {
            if (cg.class_index_.count(start)) continue;
            int id = static_cast<int>(cg.reps_.size());
            QuadForm least = start;
            QuadForm f = start;
            std::vector<QuadForm> cycle;
            for (int guard = 0;; ++guard) {
                MDV_CHECK(guard < 1000000);
                cg.class_index_[f] = id;
                cycle.push_back(f);
                if (f < least) least = f;
                f = rho_step(f, disc, s);
                MDV_CHECK(reduced_indefinite(f, s));
                if (f == start) break;
                MDV_CHECK(!cg.class_index_.count(f));
            }
            cg.reps_.push_back(least);
        }
    }

    cg.identity_ = cg.class_of(principal_form(disc));
    return cg;
}

int ClassGroup::class_of(const QuadForm& f) const {
    QuadForm r = reduce(f);
    auto it = class_index_.find(r);
    MDV_CHECK_MSG(it != class_index_.end(), "reduced form missing from class index");
    return it->second;
}

int ClassGroup::mul(int i, int j) const { return class_of(compose(reps_[i], reps_[j])); }

int ClassGroup::inv(int i) const { return class_of(inverse_form(reps_[i])); }

int ClassGroup::pow(int i, const BigInt& e) const {
    MDV_CHECK(e >= 0);
    int acc = identity_;
    int base = i;
    BigInt k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

int ClassGroup::negator_class() const {
    if (definite_) throw usage_error("negator_class: indefinite discriminants only");
    BigInt b = BigInt(mpz_fdiv_ui(disc_.get_mpz_t(), 2));
    return class_of(QuadForm{-1, b, (disc_ - b * b) / 4});
}

ClassGroupSummary class_group(const BigInt& disc) {
    ClassGroup cg = ClassGroup::build(disc);
    GroupOps narrow{cg.size(), cg.identity(), [&cg](int i, int j) { return cg.mul(i, j); }};

    ClassGroupSummary out;
    out.disc = disc;
    out.narrow_h = cg.size();

    // 3-rank from the 3-torsion count of the enumerated group. For disc > 0
    // that group is the narrow one; its odd part matches the wide group's
    // (the kernel of narrow -> wide is a 2-group), so the 3-rank is shared.
    int torsion = count_cube_roots_of_identity(narrow);
    int rank = 0;
    for (int t = torsion; t > 1; t /= 3) {
        MDV_CHECK_MSG(t % 3 == 0, "3-torsion count is not a power of 3");
        ++rank;
    }
    out.r3 = rank;

    if (cg.definite() || cg.negator_class() == cg.identity()) {
        out.h = cg.size();
        out.invariant_factors = abelian_invariant_factors(narrow);
    } else {
        // Wide group = narrow / {1, N} where N is the class of (-1, b, c).
        int neg = cg.negator_class();
        std::vector<int> elems;
        std::vector<int> pos(cg.size(), -1);
        for (int x = 0; x < cg.size(); ++x) {
            int m = std::min(x, cg.mul(x, neg));
            if (m == x) {
                pos[x] = static_cast<int>(elems.size());
                elems.push_back(x);
            }
        }
        auto coset = [&cg, neg, &pos](int x) {
            int y = std::min(x, cg.mul(x, neg));
            return pos[y];
        };
        GroupOps wide{static_cast<int>(elems.size()), coset(cg.identity()),
                      [&cg, &elems, coset](int i, int j) {
                          return coset(cg.mul(elems[i], elems[j]));
                      }};
        MDV_CHECK(wide.n * 2 == cg.size());
        out.h = wide.n;
        out.invariant_factors = abelian_invariant_factors(wide);
    }

    BigInt product = 1;
    for (const BigInt& f : out.invariant_factors) product *= f;
    MDV_CHECK(product == out.h);
    return out;
}

int r3(const BigInt& disc) { return class_group(disc).r3; }

const char* to_string(Reflection r) {
    return r == Reflection::Escalatory ? "escalatory" : "non-escalatory";
}

ReflectionVerdict classify_with(const DiscriminantPair& pair, int r3_d, int r3_dprime) {
    ReflectionVerdict v;
    v.pair = pair;
    v.r3_d = r3_d;
    v.r3_dprime = r3_dprime;
    int imaginary = v.r3_imaginary();
    int real = v.r3_real();
    if (imaginary == real + 1) {
        v.classification = Reflection::Escalatory;
    } else if (imaginary == real) {
        v.classification = Reflection::NonEscalatory;
    } else {
        throw internal_error("Scholz inequality violated for D=" + pair.d.get_str() +
                             ": r3(imaginary)=" + std::to_string(imaginary) +
                             ", r3(real)=" + std::to_string(real));
    }
    return v;
}

ReflectionVerdict classify(const DiscriminantPair& pair) {
    if (!in_family(pair.d)) throw usage_error("classify: discriminant not in the family");
    return classify_with(pair, r3(pair.d), r3(pair.dprime));
}

} // namespace mdv
