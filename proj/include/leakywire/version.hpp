#pragma once

#define LEAKYWIRE_VERSION "0.1.0"
