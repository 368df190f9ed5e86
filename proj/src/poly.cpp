#include "tdmech/poly.hpp"

#include <algorithm>
#include <sstream>

#include "tdmech/errors.hpp"

namespace tdmech {

Rational rat_from_string(const std::string& s) {
    try {
        Rational r(s, 10);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw DimensionError("bad rational literal: '" + s + "'");
    }
}

std::string rat_to_string(const Rational& r) { return r.get_str(); }

std::string var_name(Var v) {
    switch (v.kind) {
        case Var::Kind::T: return "t";
        case Var::Kind::Q: return "q" + std::to_string(v.index);
        case Var::Kind::P: return "p" + std::to_string(v.index);
    }
    return "?";
}

int Poly::slot(Var v) const {
    switch (v.kind) {
        case Var::Kind::T: return 0;
        case Var::Kind::Q:
            if (v.index < 1 || v.index > nq_) throw DimensionError("q index out of range: " + std::to_string(v.index));
            return v.index;
        case Var::Kind::P:
            if (v.index < 1 || v.index > np_) throw DimensionError("p index out of range: " + std::to_string(v.index));
            return nq_ + v.index;
    }
    throw DimensionError("bad variable");
}

Poly Poly::constant(int num_q, int num_p, const Rational& c) {
    Poly r(num_q, num_p);
    if (c != 0) r.terms_[Exps(static_cast<size_t>(1 + num_q + num_p), 0)] = c;
    return r;
}

Poly Poly::variable(int num_q, int num_p, Var v) {
    Poly r(num_q, num_p);
    Exps e(static_cast<size_t>(1 + num_q + num_p), 0);
    e[static_cast<size_t>(r.slot(v))] = 1;
    r.terms_[e] = 1;
    return r;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Exps& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw DimensionError("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

int Poly::degree_in_p() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k = 1 + nq_; k < num_vars(); ++k) s += e[static_cast<size_t>(k)];
        d = std::max(d, s);
    }
    return d;
}

int Poly::degree_in(Var v) const {
    int k = slot(v);
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(k)]);
    return d;
}

void Poly::add_term(const Exps& e, const Rational& c) {
    if (static_cast<int>(e.size()) != num_vars()) throw DimensionError("exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::check_same_signature(const Poly& o) const {
    if (nq_ != o.nq_ || np_ != o.np_)
        throw DimensionError("polynomial signature mismatch: (" + std::to_string(nq_) + "," + std::to_string(np_) +
                             ") vs (" + std::to_string(o.nq_) + "," + std::to_string(o.np_) + ")");
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_signature(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_signature(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator-() const {
    Poly r(nq_, np_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_same_signature(o);
    Poly r(nq_, np_);
    Exps e(static_cast<size_t>(num_vars()));
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

bool Poly::operator==(const Poly& o) const { return nq_ == o.nq_ && np_ == o.np_ && terms_ == o.terms_; }

Poly Poly::scaled(const Rational& c) const {
    Poly r(nq_, np_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

Poly Poly::derivative(Var v) const {
    int k = slot(v);
    Poly r(nq_, np_);
    for (const auto& [e, c] : terms_) {
        int ev = e[static_cast<size_t>(k)];
        if (ev == 0) continue;
        Exps d = e;
        d[static_cast<size_t>(k)] = ev - 1;
        r.add_term(d, c * ev);
    }
    return r;
}

namespace {
double dpow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}
Rational qpow(const Rational& x, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}
}  // namespace

double Poly::eval(const double* vals) const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = rat_to_double(c);
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k] != 0) term *= dpow(vals[k], e[k]);
        acc += term;
    }
    return acc;
}

double Poly::eval(const std::vector<double>& vals) const {
    if (static_cast<int>(vals.size()) != num_vars()) throw DimensionError("eval point length mismatch");
    return eval(vals.data());
}

Rational Poly::eval_exact(const std::vector<Rational>& vals) const {
    if (static_cast<int>(vals.size()) != num_vars()) throw DimensionError("eval point length mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k] != 0) term *= qpow(vals[k], e[k]);
        acc += term;
    }
    return acc;
}

Poly Poly::substitute(const std::map<Var, Poly>& repl) const {
    std::vector<int> slots;
    std::vector<const Poly*> polys;
    std::vector<int> maxdeg;
    for (const auto& [v, pl] : repl) {
        check_same_signature(pl);
        slots.push_back(slot(v));
        polys.push_back(&pl);
        maxdeg.push_back(degree_in(v));
    }
    // Precompute the needed powers of each replacement.
    std::vector<std::vector<Poly>> powers(polys.size());
    for (size_t i = 0; i < polys.size(); ++i) {
        powers[i].push_back(Poly::constant(nq_, np_, 1));
        for (int d = 1; d <= maxdeg[i]; ++d) powers[i].push_back(powers[i].back() * *polys[i]);
    }
    Poly out(nq_, np_);
    for (const auto& [e, c] : terms_) {
        Exps rest = e;
        for (int s : slots) rest[static_cast<size_t>(s)] = 0;
        Poly term(nq_, np_);
        term.add_term(rest, c);
        for (size_t i = 0; i < slots.size(); ++i) {
            int ev = e[static_cast<size_t>(slots[i])];
            if (ev != 0) term = term * powers[i][static_cast<size_t>(ev)];
        }
        out += term;
    }
    return out;
}

Poly Poly::with_num_p(int new_np) const {
    if (new_np < np_) throw DimensionError("with_num_p cannot shrink the momentum block");
    Poly r(nq_, new_np);
    for (const auto& [e, c] : terms_) {
        Exps w = e;
        w.resize(static_cast<size_t>(1 + nq_ + new_np), 0);
        r.terms_[w] = c;
    }
    return r;
}

Poly Poly::truncated_p(int new_np) const {
    if (new_np > np_) throw DimensionError("truncated_p cannot grow the momentum block");
    Poly r(nq_, new_np);
    for (const auto& [e, c] : terms_) {
        for (int k = 1 + nq_ + new_np; k < num_vars(); ++k)
            if (e[static_cast<size_t>(k)] != 0) throw DimensionError("truncated_p would drop a used momentum slot");
        Exps w(e.begin(), e.begin() + 1 + nq_ + new_np);
        r.terms_[w] = c;
    }
    return r;
}

Rational Poly::leading_coeff() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

Poly Poly::normalized() const {
    if (terms_.empty()) return *this;
    return scaled(1 / leading_coeff());
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Leading (lexicographically largest) term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_to_string(it->second) << ")";
        const Exps& e = it->first;
        for (int k = 0; k < num_vars(); ++k) {
            int ev = e[static_cast<size_t>(k)];
            if (ev == 0) continue;
            Var v = k == 0 ? Var::t() : (k <= nq_ ? Var::q(k) : Var::p(k - nq_));
            os << "*" << var_name(v);
            if (ev > 1) os << "^" << ev;
        }
    }
    return os.str();
}

}  // namespace tdmech
