//! Literal block lists of the small Witt designs, checked at load.

pub(super) const W12: [[u8; 6]; 132] = [
    [1, 2, 3, 4, 5, 10], [1, 2, 3, 4, 6, 12], [1, 2, 3, 4, 7, 8], [1, 2, 3, 4, 9, 11],
    [1, 2, 3, 5, 6, 8], [1, 2, 3, 5, 7, 9], [1, 2, 3, 5, 11, 12], [1, 2, 3, 6, 7, 11],
    [1, 2, 3, 6, 9, 10], [1, 2, 3, 7, 10, 12], [1, 2, 3, 8, 9, 12], [1, 2, 3, 8, 10, 11],
    [1, 2, 4, 5, 6, 9], [1, 2, 4, 5, 7, 11], [1, 2, 4, 5, 8, 12], [1, 2, 4, 6, 7, 10],
    [1, 2, 4, 6, 8, 11], [1, 2, 4, 7, 9, 12], [1, 2, 4, 8, 9, 10], [1, 2, 4, 10, 11, 12],
    [1, 2, 5, 6, 7, 12], [1, 2, 5, 6, 10, 11], [1, 2, 5, 7, 8, 10], [1, 2, 5, 8, 9, 11],
    [1, 2, 5, 9, 10, 12], [1, 2, 6, 7, 8, 9], [1, 2, 6, 8, 10, 12], [1, 2, 6, 9, 11, 12],
    [1, 2, 7, 8, 11, 12], [1, 2, 7, 9, 10, 11], [1, 3, 4, 5, 6, 7], [1, 3, 4, 5, 8, 11],
    [1, 3, 4, 5, 9, 12], [1, 3, 4, 6, 8, 9], [1, 3, 4, 6, 10, 11], [1, 3, 4, 7, 9, 10],
    [1, 3, 4, 7, 11, 12], [1, 3, 4, 8, 10, 12], [1, 3, 5, 6, 9, 11], [1, 3, 5, 6, 10, 12],
    [1, 3, 5, 7, 8, 12], [1, 3, 5, 7, 10, 11], [1, 3, 5, 8, 9, 10], [1, 3, 6, 7, 8, 10],
    [1, 3, 6, 7, 9, 12], [1, 3, 6, 8, 11, 12], [1, 3, 7, 8, 9, 11], [1, 3, 9, 10, 11, 12],
    [1, 4, 5, 6, 8, 10], [1, 4, 5, 6, 11, 12], [1, 4, 5, 7, 8, 9], [1, 4, 5, 7, 10, 12],
    [1, 4, 5, 9, 10, 11], [1, 4, 6, 7, 8, 12], [1, 4, 6, 7, 9, 11], [1, 4, 6, 9, 10, 12],
    [1, 4, 7, 8, 10, 11], [1, 4, 8, 9, 11, 12], [1, 5, 6, 7, 8, 11], [1, 5, 6, 7, 9, 10],
    [1, 5, 6, 8, 9, 12], [1, 5, 7, 9, 11, 12], [1, 5, 8, 10, 11, 12], [1, 6, 7, 10, 11, 12],
    [1, 6, 8, 9, 10, 11], [1, 7, 8, 9, 10, 12], [2, 3, 4, 5, 6, 11], [2, 3, 4, 5, 7, 12],
    [2, 3, 4, 5, 8, 9], [2, 3, 4, 6, 7, 9], [2, 3, 4, 6, 8, 10], [2, 3, 4, 7, 10, 11],
    [2, 3, 4, 8, 11, 12], [2, 3, 4, 9, 10, 12], [2, 3, 5, 6, 7, 10], [2, 3, 5, 6, 9, 12],
    [2, 3, 5, 7, 8, 11], [2, 3, 5, 8, 10, 12], [2, 3, 5, 9, 10, 11], [2, 3, 6, 7, 8, 12],
    [2, 3, 6, 8, 9, 11], [2, 3, 6, 10, 11, 12], [2, 3, 7, 8, 9, 10], [2, 3, 7, 9, 11, 12],
    [2, 4, 5, 6, 7, 8], [2, 4, 5, 6, 10, 12], [2, 4, 5, 7, 9, 10], [2, 4, 5, 8, 10, 11],
    [2, 4, 5, 9, 11, 12], [2, 4, 6, 7, 11, 12], [2, 4, 6, 8, 9, 12], [2, 4, 6, 9, 10, 11],
    [2, 4, 7, 8, 9, 11], [2, 4, 7, 8, 10, 12], [2, 5, 6, 7, 9, 11], [2, 5, 6, 8, 9, 10],
    [2, 5, 6, 8, 11, 12], [2, 5, 7, 8, 9, 12], [2, 5, 7, 10, 11, 12], [2, 6, 7, 8, 10, 11],
    [2, 6, 7, 9, 10, 12], [2, 8, 9, 10, 11, 12], [3, 4, 5, 6, 8, 12], [3, 4, 5, 6, 9, 10],
    [3, 4, 5, 7, 8, 10], [3, 4, 5, 7, 9, 11], [3, 4, 5, 10, 11, 12], [3, 4, 6, 7, 8, 11],
    [3, 4, 6, 7, 10, 12], [3, 4, 6, 9, 11, 12], [3, 4, 7, 8, 9, 12], [3, 4, 8, 9, 10, 11],
    [3, 5, 6, 7, 8, 9], [3, 5, 6, 7, 11, 12], [3, 5, 6, 8, 10, 11], [3, 5, 7, 9, 10, 12],
    [3, 5, 8, 9, 11, 12], [3, 6, 7, 9, 10, 11], [3, 6, 8, 9, 10, 12], [3, 7, 8, 10, 11, 12],
    [4, 5, 6, 7, 9, 12], [4, 5, 6, 7, 10, 11], [4, 5, 6, 8, 9, 11], [4, 5, 7, 8, 11, 12],
    [4, 5, 8, 9, 10, 12], [4, 6, 7, 8, 9, 10], [4, 6, 8, 10, 11, 12], [4, 7, 9, 10, 11, 12],
    [5, 6, 7, 8, 10, 12], [5, 6, 9, 10, 11, 12], [5, 7, 8, 9, 10, 11], [6, 7, 8, 9, 11, 12],
];

pub(super) const W11: [[u8; 5]; 66] = [
    [1, 2, 3, 4, 6], [1, 2, 3, 5, 11], [1, 2, 3, 7, 10], [1, 2, 3, 8, 9],
    [1, 2, 4, 5, 8], [1, 2, 4, 7, 9], [1, 2, 4, 10, 11], [1, 2, 5, 6, 7],
    [1, 2, 5, 9, 10], [1, 2, 6, 8, 10], [1, 2, 6, 9, 11], [1, 2, 7, 8, 11],
    [1, 3, 4, 5, 9], [1, 3, 4, 7, 11], [1, 3, 4, 8, 10], [1, 3, 5, 6, 10],
    [1, 3, 5, 7, 8], [1, 3, 6, 7, 9], [1, 3, 6, 8, 11], [1, 3, 9, 10, 11],
    [1, 4, 5, 6, 11], [1, 4, 5, 7, 10], [1, 4, 6, 7, 8], [1, 4, 6, 9, 10],
    [1, 4, 8, 9, 11], [1, 5, 6, 8, 9], [1, 5, 7, 9, 11], [1, 5, 8, 10, 11],
    [1, 6, 7, 10, 11], [1, 7, 8, 9, 10], [2, 3, 4, 5, 7], [2, 3, 4, 8, 11],
    [2, 3, 4, 9, 10], [2, 3, 5, 6, 9], [2, 3, 5, 8, 10], [2, 3, 6, 7, 8],
    [2, 3, 6, 10, 11], [2, 3, 7, 9, 11], [2, 4, 5, 6, 10], [2, 4, 5, 9, 11],
    [2, 4, 6, 7, 11], [2, 4, 6, 8, 9], [2, 4, 7, 8, 10], [2, 5, 6, 8, 11],
    [2, 5, 7, 8, 9], [2, 5, 7, 10, 11], [2, 6, 7, 9, 10], [2, 8, 9, 10, 11],
    [3, 4, 5, 6, 8], [3, 4, 5, 10, 11], [3, 4, 6, 7, 10], [3, 4, 6, 9, 11],
    [3, 4, 7, 8, 9], [3, 5, 6, 7, 11], [3, 5, 7, 9, 10], [3, 5, 8, 9, 11],
    [3, 6, 8, 9, 10], [3, 7, 8, 10, 11], [4, 5, 6, 7, 9], [4, 5, 7, 8, 11],
    [4, 5, 8, 9, 10], [4, 6, 8, 10, 11], [4, 7, 9, 10, 11], [5, 6, 7, 8, 10],
    [5, 6, 9, 10, 11], [6, 7, 8, 9, 11],
];
