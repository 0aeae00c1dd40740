#pragma once

#include <iosfwd>
#include <string>

#include "steadymps/mpo.hpp"
#include "steadymps/mps.hpp"

namespace steadymps {

struct SerializationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Self-describing binary containers with a versioned header; dims and
// complex entries are stored in the canonical row-major layout.

void save_mps(std::ostream& os, const Mps& psi);
Mps load_mps(std::istream& is);
void save_mps(const std::string& path, const Mps& psi);
Mps load_mps(const std::string& path);

void save_mpo(std::ostream& os, const Mpo& o);
Mpo load_mpo(std::istream& is);
void save_mpo(const std::string& path, const Mpo& o);
Mpo load_mpo(const std::string& path);

}  // namespace steadymps
