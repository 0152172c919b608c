#ifndef MDV_CLASSGROUP_HPP
#define MDV_CLASSGROUP_HPP

#include <map>
#include <vector>

#include "mdv/arith.hpp"
#include "mdv/discriminants.hpp"

namespace mdv {

// Primitive integral binary quadratic form a x^2 + b xy + c y^2.
// For fundamental discriminants every integral form is automatically
// primitive. Definite forms are kept with a > 0.
struct QuadForm {
    BigInt a, b, c;

    BigInt disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

QuadForm principal_form(const BigInt& disc);

// Reduced predicate. Definite: -a < b <= a <= c with b >= 0 when a == c.
// Indefinite: 0 < b < sqrt(disc) and sqrt(disc) - b < 2|a| < sqrt(disc) + b.
bool is_reduced(const QuadForm& f);

// Definite case: the unique reduced representative of the class.
// Indefinite case: some reduced form in the rho-cycle of the class.
QuadForm reduce(const QuadForm& f);

// One step of the indefinite reduction / cycle operator.
QuadForm rho(const QuadForm& f);

// Gauss composition; result is reduced. Forms must share a discriminant.
QuadForm compose(const QuadForm& f, const QuadForm& g);

QuadForm inverse_form(const QuadForm& f);

// The full class group of a fundamental discriminant, realized on reduced
// forms. For disc > 0 this is the narrow group: one class per rho-cycle.
class ClassGroup {
public:
    static ClassGroup build(const BigInt& disc);

    const BigInt& disc() const { return disc_; }
    bool definite() const { return definite_; }
    int size() const { return static_cast<int>(reps_.size()); }
    int identity() const { return identity_; }
    const QuadForm& rep(int i) const { return reps_[i]; }
    const std::vector<QuadForm>& reduced_forms() const { return reduced_; }

    int class_of(const QuadForm& f) const;
    int mul(int i, int j) const;
    int inv(int i) const;
    int pow(int i, const BigInt& e) const;

    // Class of a form with leading coefficient -1 (disc > 0 only). It is the
    // identity exactly when the fundamental unit has norm -1, i.e. when the
    // narrow and wide class groups coincide.
    int negator_class() const;

private:
    BigInt disc_;
    bool definite_ = false;
    int identity_ = 0;
    std::vector<QuadForm> reps_;       // canonical representative per class
    std::vector<QuadForm> reduced_;    // every reduced form, sorted
    std::map<QuadForm, int> class_index_;  // reduced form -> class id
};

struct ClassGroupSummary {
    BigInt disc;
    BigInt h;                               // class number; wide for disc > 0
    std::vector<BigInt> invariant_factors;  // ascending, each divides the next
    int r3 = 0;                             // rank of the 3-part
    BigInt narrow_h;                        // equals h for disc < 0
};

// Enumerates the reduced forms, resolves the group structure by composition,
// and (disc > 0) derives the wide group from the narrow one. r3 is computed
// by counting classes with C^3 = identity; the invariant factors provide the
// independent route used by the verification suites.
ClassGroupSummary class_group(const BigInt& disc);

int r3(const BigInt& disc);

enum class Reflection { Escalatory, NonEscalatory };

const char* to_string(Reflection r);

struct ReflectionVerdict {
    DiscriminantPair pair;
    int r3_d = 0;
    int r3_dprime = 0;
    Reflection classification = Reflection::NonEscalatory;

    int r3_imaginary() const { return pair.negative ? r3_d : r3_dprime; }
    int r3_real() const { return pair.negative ? r3_dprime : r3_d; }
};

// Checks Scholz's inequality on the pair and classifies it. A violated
// inequality can only mean a class-group bug, so it is a hard error.
ReflectionVerdict classify(const DiscriminantPair& pair);
ReflectionVerdict classify_with(const DiscriminantPair& pair, int r3_d, int r3_dprime);

} // namespace mdv

#endif
