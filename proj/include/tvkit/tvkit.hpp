#pragma once
/// Umbrella header.

#include <tvkit/approx.hpp>
#include <tvkit/bounds.hpp>
#include <tvkit/compose.hpp>
#include <tvkit/error.hpp>
#include <tvkit/fixtures.hpp>
#include <tvkit/integrate.hpp>
#include <tvkit/io.hpp>
#include <tvkit/norms.hpp>
#include <tvkit/path.hpp>
#include <tvkit/random.hpp>
#include <tvkit/seminorm.hpp>
#include <tvkit/variation.hpp>
