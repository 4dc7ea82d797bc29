#pragma once

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace synchro {

/// Raised on contract violations: unknown names, malformed inputs.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// True for `[A-Za-z_][A-Za-z0-9_]*`.
bool is_identifier(std::string_view text);

/// A transition label: either the internal action tau or a letter of the alphabet.
///
/// Labels order letters by name with tau last; this is the canonical order used
/// for menus, scripted resolution and serialization.
class Label {
public:
    Label() = default;

    static Label tau() { return Label{}; }
    /// Throws Error unless `name` is an identifier other than "tau".
    static Label letter(std::string name);
    /// "tau" maps to tau, anything else to a letter.
    static Label parse(std::string_view text);

    bool is_tau() const { return name_.empty(); }
    const std::string& name() const;

    friend bool operator==(const Label&, const Label&) = default;
    friend std::strong_ordering operator<=>(const Label& lhs, const Label& rhs);

private:
    std::string name_;
};

std::string to_string(const Label& label);

/// The letter set Sigma. Sigma_tau is implicit: tau is always a member.
class Alphabet {
public:
    Alphabet() = default;
    /// Throws Error on a reserved or malformed letter name.
    explicit Alphabet(std::set<std::string> letters);

    const std::set<std::string>& letters() const { return letters_; }
    bool contains(const Label& label) const;
    bool contains_letter(const std::string& name) const { return letters_.count(name) > 0; }
    /// Sigma_tau in canonical order (letters sorted, tau last).
    std::vector<Label> labels() const;
    /// Sigma_tau of this alphabet is a subset of Sigma_tau of `other`.
    bool subset_of(const Alphabet& other) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::set<std::string> letters_;
};

} // namespace synchro
