#include "adef/distribution.hpp"

#include <cmath>
#include <sstream>

namespace adef {

Distribution Distribution::delta(double location, int order, double weight) {
    Distribution d;
    d.deltas_.push_back({location, order, weight});
    return d;
}

Distribution Distribution::kernel_one(double c) {
    Distribution d;
    d.kernel_ = SymExpr::constant(c);
    d.kernel_is_const_ = true;
    d.kernel_const_ = c;
    d.in_E_prime_ = false;
    return d;
}

Distribution Distribution::from_kernel(SymExpr rho) {
    Distribution d;
    auto s = rho.support();
    d.in_E_prime_ = s.has_value() && s->finite();
    d.kernel_ = std::move(rho);
    return d;
}

Distribution Distribution::operator+(const Distribution& o) const {
    Distribution d = *this;
    d.deltas_.insert(d.deltas_.end(), o.deltas_.begin(), o.deltas_.end());
    if (o.kernel_) {
        if (d.kernel_)
            d.kernel_ = *d.kernel_ + *o.kernel_;
        else
            d.kernel_ = o.kernel_;
        d.kernel_is_const_ = false;
    }
    d.in_E_prime_ = d.in_E_prime_ && o.in_E_prime_;
    return d;
}

Distribution Distribution::scaled(double c) const {
    Distribution d = *this;
    for (auto& t : d.deltas_) t.weight *= c;
    if (d.kernel_) d.kernel_ = d.kernel_->scaled(c);
    d.kernel_const_ *= c;
    return d;
}

bool Distribution::is_zero() const {
    if (!deltas_.empty()) return false;
    return !kernel_ || kernel_->is_zero();
}

double Distribution::apply(const SymExpr& phi) const {
    double acc = 0.0;
    for (const auto& t : deltas_) {
        double v = phi.diff(t.order).eval(t.location);
        acc += t.weight * ((t.order % 2) ? -v : v);
    }
    if (kernel_ && !kernel_->is_zero()) {
        SymExpr prod = *kernel_ * phi;
        acc += integrate(prod);
    }
    return acc;
}

double Distribution::apply(const SymExpr& phi, Interval hull) const {
    double acc = 0.0;
    for (const auto& t : deltas_) {
        double v = phi.diff(t.order).eval(t.location);
        acc += t.weight * ((t.order % 2) ? -v : v);
    }
    if (kernel_ && !kernel_->is_zero()) acc += integrate(*kernel_ * phi, hull.lo, hull.hi);
    return acc;
}

Distribution Distribution::mu_tilde() const {
    // mu_tilde(x) = < M(y), theta(y-x) - theta_tilde(y) >
    Distribution out;
    SymExpr kernel_acc;
    SymExpr tstep = SymExpr::smooth_step();
    bool have_kernel = false;
    for (const auto& t : deltas_) {
        if (t.order == 0) {
            // theta(a - x) - theta_tilde(a)
            kernel_acc = kernel_acc + (SymExpr::step_below(t.location) +
                                       SymExpr::constant(-tstep.eval(t.location)))
                                          .scaled(t.weight);
            have_kernel = true;
        } else {
            // (-1)^k d^k/dy^k [theta(y-x) - theta_tilde(y)] at y=a:
            //   delta part: -delta^{(k-1)}(x-a); constant part: (-1)^{k+1} theta_tilde^{(k)}(a)
            out.deltas_.push_back({t.location, t.order - 1, -t.weight});
            double c = tstep.diff(t.order).eval(t.location);
            kernel_acc = kernel_acc +
                         SymExpr::constant(t.weight * ((t.order % 2 == 0) ? -c : c));
            have_kernel = true;
        }
    }
    if (kernel_ && !kernel_->is_zero()) {
        if (kernel_is_const_) {
            // int c (theta(y-x) - theta_tilde(y)) dy = -c x  (transition on [-1,1])
            kernel_acc = kernel_acc + SymExpr::poly({0.0, -kernel_const_});
            have_kernel = true;
        } else {
            auto s = kernel_->support();
            if (!s || !s->finite())
                throw NonIntegrable("mu_tilde: kernel must be compact or constant");
            double total = integrate(*kernel_);
            double c_tilde = integrate(*kernel_ * tstep);
            kernel_acc = kernel_acc + SymExpr::constant(total - c_tilde) -
                         SymExpr::heaviside_convolve(*kernel_);
            have_kernel = true;
        }
    }
    if (have_kernel && !kernel_acc.is_zero()) out.kernel_ = kernel_acc;
    out.in_E_prime_ = false;
    return out;
}

nlohmann::json Distribution::to_json() const {
    nlohmann::json j;
    nlohmann::json darr = nlohmann::json::array();
    for (const auto& t : deltas_)
        darr.push_back({{"location", t.location}, {"order", t.order}, {"weight", t.weight}});
    j["deltas"] = darr;
    if (kernel_) j["kernel"] = kernel_->to_json();
    j["in_E_prime"] = in_E_prime_;
    return j;
}

Distribution Distribution::from_json(const nlohmann::json& j) {
    Distribution d;
    if (j.contains("type")) {
        // compact CLI form: {"type":"delta","location":..,"order":..,"weight":..}
        //                   {"type":"kernel_one","value":..}
        const std::string ty = j.at("type").get<std::string>();
        if (ty == "delta")
            return delta(j.value("location", 0.0), j.value("order", 0), j.value("weight", 1.0));
        if (ty == "kernel_one") return kernel_one(j.value("value", 1.0));
        throw ConfigError("unknown distribution type: " + ty);
    }
    for (const auto& e : j.at("deltas"))
        d.deltas_.push_back({e.at("location").get<double>(), e.at("order").get<int>(),
                             e.at("weight").get<double>()});
    if (j.contains("kernel")) d.kernel_ = SymExpr::from_json(j.at("kernel"));
    d.in_E_prime_ = j.value("in_E_prime", true);
    return d;
}

std::string Distribution::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : deltas_) {
        if (!first) os << " + ";
        first = false;
        if (t.weight != 1.0) os << t.weight << "*";
        os << "delta";
        if (t.order > 0) os << "^(" << t.order << ")";
        os << "(x-" << t.location << ")";
    }
    if (kernel_ && !kernel_->is_zero()) {
        if (!first) os << " + ";
        os << (kernel_is_const_ ? "kernel 1" : "kernel");
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace adef
