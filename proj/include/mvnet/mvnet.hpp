#pragma once

#include "mvnet/checks.hpp"
#include "mvnet/conversion.hpp"
#include "mvnet/core.hpp"
#include "mvnet/dynamics.hpp"
#include "mvnet/interaction.hpp"
#include "mvnet/io.hpp"
#include "mvnet/mirror.hpp"
