var exec = require('cordova/exec');

module.exports = {
    list: function (success, failure) {
        exec(success, failure, 'BluetoothSerial', 'list', []);
    },
    connect: function (success, failure) {
        exec(success, failure, 'BluetoothSerial', 'connect', []);
    },
    read: function (success, failure) {
        exec(success, failure, 'BluetoothSerial', 'read', []);
    }
};
