#include "dendro/itinerary.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace dendro {

namespace {

void require_param(const Rational& param) {
    if (param.sign() <= 0 || param > Rational(1)) {
        throw std::invalid_argument("beam parameter must lie in (0,1], got " + param.str());
    }
}

}  // namespace

Itinerary Itinerary::finite(std::vector<Step> steps, Branch terminal_branch, Rational param) {
    require_param(param);
    Itinerary it;
    it.kind_ = Kind::finite;
    it.steps_ = std::move(steps);
    it.terminal_ = terminal_branch;
    it.param_ = std::move(param);
    return it;
}

Itinerary Itinerary::lazy(std::vector<Step> steps, Branch terminal_branch, GammaTail tail) {
    if (tail.r.sign() <= 0 || tail.r > Rational(1)) {
        throw std::invalid_argument("lazy tail needs r in (0,1], got " + tail.r.str());
    }
    if (tail.next_index == 0) {
        throw std::invalid_argument("lazy tail index starts at 1");
    }
    // Fold (..., n, b_{j-1}, 0, *gamma[r,j]) into (..., n, *gamma[r,j-1]).
    while (!steps.empty() && terminal_branch == 0 && tail.next_index > 1 &&
           steps.back().dyadic == gamma_cap_kth(tail.r, tail.next_index - 1)) {
        terminal_branch = steps.back().branch;
        steps.pop_back();
        --tail.next_index;
    }
    Itinerary it;
    it.kind_ = Kind::lazy;
    it.steps_ = std::move(steps);
    it.terminal_ = terminal_branch;
    it.tail_ = std::move(tail);
    return it;
}

const Rational& Itinerary::param() const {
    if (kind_ != Kind::finite) {
        throw std::logic_error("param() on a non-finite itinerary " + str());
    }
    return param_;
}

const GammaTail& Itinerary::tail() const {
    if (kind_ != Kind::lazy) {
        throw std::logic_error("tail() on a non-lazy itinerary " + str());
    }
    return tail_;
}

std::strong_ordering operator<=>(const Itinerary& a, const Itinerary& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.steps_ <=> b.steps_; c != 0) return c;
    if (auto c = a.terminal_ <=> b.terminal_; c != 0) return c;
    if (auto c = a.param_ <=> b.param_; c != 0) return c;
    return a.tail_ <=> b.tail_;
}

std::string Itinerary::str() const {
    if (kind_ == Kind::origin) {
        return "(0)";
    }
    std::string out = "(";
    for (const Step& s : steps_) {
        out += std::to_string(s.branch);
        out += ',';
        out += s.dyadic.value().str();
        out += ',';
    }
    out += std::to_string(terminal_);
    out += ',';
    if (kind_ == Kind::finite) {
        out += param_.str();
    } else {
        out += "*gamma[" + tail_.r.str() + "," + std::to_string(tail_.next_index) + "]";
    }
    out += ')';
    return out;
}

namespace {

struct Token {
    std::string_view text;
    std::size_t position;
};

std::string_view trim(std::string_view s, std::size_t& offset) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++offset;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

Branch parse_branch(const Token& tok) {
    if (tok.text.empty() || !std::all_of(tok.text.begin(), tok.text.end(),
                                         [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("expected a branch index, got \"" + std::string(tok.text) + "\"", tok.position);
    }
    try {
        return std::stoull(std::string(tok.text));
    } catch (const std::out_of_range&) {
        throw ParseError("branch index out of range", tok.position);
    }
}

Rational parse_rational_token(const Token& tok) {
    try {
        return Rational::parse(tok.text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), tok.position);
    }
}

GammaTail parse_gamma(const Token& tok) {
    constexpr std::string_view head = "*gamma[";
    if (tok.text.substr(0, head.size()) != head || tok.text.back() != ']') {
        throw ParseError("expected *gamma[r,k]", tok.position);
    }
    const std::string_view body = tok.text.substr(head.size(), tok.text.size() - head.size() - 1);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) {
        throw ParseError("expected *gamma[r,k]", tok.position);
    }
    const Rational r = parse_rational_token({body.substr(0, comma), tok.position + head.size()});
    const Branch k = parse_branch({body.substr(comma + 1), tok.position + head.size() + comma + 1});
    return GammaTail{r, k};
}

}  // namespace

Itinerary Itinerary::parse(std::string_view text) {
    std::size_t offset = 0;
    text = trim(text, offset);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
        throw ParseError("itinerary must be enclosed in parentheses", offset);
    }
    std::vector<Token> tokens;
    std::size_t start = 1;
    int depth = 0;
    for (std::size_t i = 1; i + 1 <= text.size(); ++i) {
        const char c = text[i];
        const bool at_end = (i == text.size() - 1);
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if ((c == ',' && depth == 0) || at_end) {
            std::size_t tok_offset = offset + start;
            tokens.push_back({trim(text.substr(start, i - start), tok_offset), tok_offset});
            start = i + 1;
        }
    }
    if (depth != 0) {
        throw ParseError("unbalanced brackets", offset);
    }
    if (tokens.size() == 1) {
        if (tokens[0].text != "0") {
            throw ParseError("a single-entry itinerary must be the origin \"(0)\"", tokens[0].position);
        }
        return origin();
    }
    if (tokens.size() % 2 != 0) {
        throw ParseError("itinerary needs alternating branch/position entries", offset + text.size() - 1);
    }
    std::vector<Step> steps;
    for (std::size_t i = 0; i + 2 < tokens.size(); i += 2) {
        const Branch branch = parse_branch(tokens[i]);
        const Rational value = parse_rational_token(tokens[i + 1]);
        auto dyadic = Dyadic::from_rational(value);
        if (!dyadic) {
            throw ParseError("star position must be a dyadic in (0,1), got " + value.str(), tokens[i + 1].position);
        }
        steps.push_back({branch, *dyadic});
    }
    const Branch terminal = parse_branch(tokens[tokens.size() - 2]);
    const Token& last = tokens.back();
    try {
        if (!last.text.empty() && last.text.front() == '*') {
            return lazy(std::move(steps), terminal, parse_gamma(last));
        }
        return finite(std::move(steps), terminal, parse_rational_token(last));
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), last.position);
    }
}

std::size_t level_count(const Itinerary& it) {
    switch (it.kind()) {
        case Itinerary::Kind::origin: return 0;
        case Itinerary::Kind::finite: return it.steps().size() + 1;
        case Itinerary::Kind::lazy: return kUnbounded;
    }
    return 0;
}

Level level_at(const Itinerary& it, std::size_t i) {
    const auto& steps = it.steps();
    if (i < steps.size()) {
        return {steps[i].branch, steps[i].dyadic.value(), steps[i].dyadic};
    }
    if (it.is_finite() && i == steps.size()) {
        return {it.terminal_branch(), it.param(), std::nullopt};
    }
    if (it.is_lazy()) {
        const std::uint64_t offset = i - steps.size();
        const Dyadic d = it.tail().dyadic_at(offset);
        return {offset == 0 ? it.terminal_branch() : Branch{0}, d.value(), d};
    }
    throw std::out_of_range("level " + std::to_string(i) + " beyond itinerary " + it.str());
}

namespace {

// Drop the leading (0, a) step and add level(a) to the branch that follows.
Itinerary consume_head(const Itinerary& it) {
    const unsigned level = it.steps().front().dyadic.level();
    std::vector<Step> rest(it.steps().begin() + 1, it.steps().end());
    Branch terminal = it.terminal_branch();
    if (rest.empty()) {
        terminal += level;
    } else {
        rest.front().branch += level;
    }
    if (it.is_finite()) {
        return Itinerary::finite(std::move(rest), terminal, it.param());
    }
    return Itinerary::lazy(std::move(rest), terminal, it.tail());
}

// Lower the head branch by `amount` (amount <= head branch).
Itinerary lower_head(const Itinerary& it, Branch amount) {
    std::vector<Step> steps = it.steps();
    Branch terminal = it.terminal_branch();
    if (steps.empty()) {
        terminal -= amount;
    } else {
        steps.front().branch -= amount;
    }
    if (it.is_finite()) {
        return Itinerary::finite(std::move(steps), terminal, it.param());
    }
    return Itinerary::lazy(std::move(steps), terminal, it.tail());
}

Branch head_branch(const Itinerary& it) {
    return it.steps().empty() ? it.terminal_branch() : it.steps().front().branch;
}

}  // namespace

Itinerary apply_f(const Itinerary& it) {
    if (it.is_origin()) {
        return it;
    }
    if (head_branch(it) >= 1) {
        return lower_head(it, 1);
    }
    if (it.steps().empty()) {
        if (it.is_finite()) {
            return Itinerary::origin();  // beam B_0 collapses onto the centre
        }
        // (0, b_j, 0, b_{j+1}, ...) -> (level(b_j), b_{j+1}, 0, ...)
        const GammaTail& tail = it.tail();
        const Dyadic head = tail.dyadic_at(0);
        return Itinerary::lazy({}, head.level(), GammaTail{tail.r, tail.next_index + 1});
    }
    return consume_head(it);
}

Itinerary iterate_f(const Itinerary& it, std::uint64_t n) {
    Itinerary current = it;
    while (n > 0 && !current.is_origin()) {
        const Branch head = head_branch(current);
        if (head >= 1) {
            const Branch stride = std::min<Branch>(head, n);
            current = lower_head(current, stride);
            n -= stride;
        } else {
            current = apply_f(current);
            --n;
        }
    }
    return current;
}

std::uint64_t time_to_origin_bound(const Itinerary& it) {
    if (it.is_lazy()) {
        throw std::invalid_argument("lazy itinerary never reaches the origin: " + it.str());
    }
    if (it.is_origin()) {
        return 0;
    }
    std::uint64_t total = it.terminal_branch() + 1;
    for (const Step& s : it.steps()) {
        total += s.branch + s.dyadic.level() + 1;
    }
    return total;
}

std::uint64_t time_to_origin(const Itinerary& it) {
    const std::uint64_t cap = time_to_origin_bound(it);
    Itinerary current = it;
    std::uint64_t steps = 0;
    while (!current.is_origin()) {
        if (steps > cap) {
            throw std::logic_error("orbit of " + it.str() + " exceeded its hitting-time bound");
        }
        const Branch head = head_branch(current);
        if (head >= 1) {
            current = lower_head(current, head);
            steps += head;
        } else {
            current = apply_f(current);
            ++steps;
        }
    }
    return steps;
}

Itinerary special_point(const Rational& r) {
    if (r.sign() <= 0 || r > Rational(1)) {
        throw std::invalid_argument("special_point needs r in (0,1], got " + r.str());
    }
    return Itinerary::lazy({}, 0, GammaTail{r, 1});
}

std::vector<std::uint64_t> return_times(const Rational& r, std::uint64_t count) {
    if (count < 2) {
        throw std::invalid_argument("return_times needs K >= 2");
    }
    std::vector<std::uint64_t> times;
    times.reserve(count - 1);
    Itinerary current = special_point(r);
    std::uint64_t step = 0;
    std::uint64_t k = 1;
    while (k < count) {
        current = apply_f(current);
        ++step;
        if (current.steps().empty() && current.terminal_branch() == 0) {
            ++k;
            if (current.tail().next_index != k) {
                throw std::logic_error("orbit of special point lost its tail alignment");
            }
            times.push_back(step);
        }
    }
    return times;
}

}  // namespace dendro
